#pragma once

#include <cstddef>

namespace superklust {

// Plain left-to-right accumulation. Every exact-distance path (k-means,
// oracle inference, KNN) goes through here so their rounding agrees.
inline double squared_distance(const double* a, const double* b, std::ptrdiff_t d) {
  double s = 0.0;
  for (std::ptrdiff_t j = 0; j < d; ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

}  // namespace superklust
