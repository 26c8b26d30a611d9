#pragma once

#include "superklust/common.hpp"

#include <cstdint>
#include <vector>

namespace superklust {

struct KMeansConfig {
  int k = 8;
  int max_iter = 100;
  // Lloyd stops once the relative inertia decrease of an iteration falls to tol.
  double tol = 1e-6;
  int n_restarts = 4;
  std::uint64_t seed = 0;

  void validate() const;
};

struct KMeansResult {
  Matrix centers;                // m x d, m <= k
  std::vector<int> assignments;  // cluster index per sample, in [0, m)
  double inertia = 0.0;
  int iterations = 0;
  // Inertia after each assignment step, in iteration order.
  std::vector<double> inertia_history;
};

/// k-means++ seeding. The first center is a uniformly drawn row; each further
/// center is a row drawn with probability proportional to its squared distance
/// to the nearest chosen center. Rows already chosen (or identical to a chosen
/// row) have zero weight, so fewer than k centers come back when the data has
/// fewer than k distinct rows.
Matrix kmeans_pp_init(const Matrix& data, int k, std::uint64_t seed);

/// Lloyd iterations from the given centers.
///
/// Each iteration assigns every sample to its nearest center (ties go to the
/// lowest index), stops if the assignment is unchanged, drops clusters that
/// received no samples, then moves each center to the mean of its samples.
/// Iteration also stops after `max_iter` assignment steps or when the
/// relative inertia decrease is at most `tol`.
///
/// The returned centers are always the means of the returned assignments.
/// With tol = 0 and enough iterations the result is an exact fixed point.
KMeansResult lloyd(const Matrix& data, const Matrix& init_centers, int max_iter, double tol);

/// Best-of-n_restarts k-means; restart r is seeded with `config.seed + r`.
/// Ties in inertia keep the earliest restart.
KMeansResult fit_kmeans(const Matrix& data, const KMeansConfig& config);

// Nearest row of `centers` for every row of `data`, lowest index on ties.
std::vector<int> nearest_center(const Matrix& data, const Matrix& centers);

}  // namespace superklust
