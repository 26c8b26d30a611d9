#pragma once

#include <cstdint>
#include <random>

namespace superklust {

/// Seedable generator built on std::mt19937_64, whose output sequence is
/// fixed by the C++ standard. Real-valued draws are derived from raw 64-bit
/// outputs here rather than through <random> distributions, whose algorithms
/// differ between standard libraries.
///
/// Streams: independent jobs derive their seed as `base + index`
/// (restart index in k-means, class offset in fit).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via the Box-Muller transform; the second variate is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace superklust
