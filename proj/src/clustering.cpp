#include "superklust/clustering.hpp"

#include "superklust/distance.hpp"
#include "superklust/rng.hpp"

#include <limits>

namespace superklust {

void KMeansConfig::validate() const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  if (n_restarts < 1) throw Error(ErrorCode::kInvalidArgument, "n_restarts must be >= 1");
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be >= 0");
}

namespace {

void check_data(const Matrix& data) {
  if (data.rows() == 0 || data.cols() == 0) throw Error(ErrorCode::kEmptyInput, "empty input");
  require_finite(data, "clustering input");
}

struct Assignment {
  std::vector<int> index;
  double inertia = 0.0;
};

Assignment assign(const Matrix& data, const Matrix& centers) {
  const auto n = data.rows();
  const auto d = data.cols();
  Assignment out;
  out.index.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* x = data.row(i).data();
    int best = 0;
    double best_dist = squared_distance(x, centers.row(0).data(), d);
    for (Eigen::Index c = 1; c < centers.rows(); ++c) {
      const double dist = squared_distance(x, centers.row(c).data(), d);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(c);
      }
    }
    out.index[static_cast<std::size_t>(i)] = best;
    out.inertia += best_dist;
  }
  return out;
}

// Drops clusters without samples and renumbers `index` in place; returns the
// per-cluster means of the surviving clusters.
Matrix drop_empty_and_average(const Matrix& data, std::vector<int>& index, Eigen::Index n_centers) {
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(n_centers), 0);
  for (int a : index) ++counts[static_cast<std::size_t>(a)];

  std::vector<int> remap(static_cast<std::size_t>(n_centers), -1);
  int m = 0;
  for (Eigen::Index c = 0; c < n_centers; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) remap[static_cast<std::size_t>(c)] = m++;
  }
  for (int& a : index) a = remap[static_cast<std::size_t>(a)];

  Matrix sums = Matrix::Zero(m, data.cols());
  std::vector<Eigen::Index> kept(static_cast<std::size_t>(m), 0);
  for (std::size_t i = 0; i < index.size(); ++i) {
    sums.row(index[i]) += data.row(static_cast<Eigen::Index>(i));
    ++kept[static_cast<std::size_t>(index[i])];
  }
  for (int c = 0; c < m; ++c) sums.row(c) /= static_cast<double>(kept[static_cast<std::size_t>(c)]);
  return sums;
}

double inertia_of(const Matrix& data, const Matrix& centers, const std::vector<int>& index) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    total += squared_distance(data.row(i).data(),
                              centers.row(index[static_cast<std::size_t>(i)]).data(), data.cols());
  }
  return total;
}

}  // namespace

std::vector<int> nearest_center(const Matrix& data, const Matrix& centers) {
  if (centers.rows() == 0) throw Error(ErrorCode::kInvalidArgument, "no centers");
  if (centers.cols() != data.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "data and centers differ in dimension");
  }
  return assign(data, centers).index;
}

Matrix kmeans_pp_init(const Matrix& data, int k, std::uint64_t seed) {
  check_data(data);
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");

  const auto n = data.rows();
  const auto d = data.cols();
  const auto want = std::min<Eigen::Index>(k, n);
  Rng rng(seed);

  std::vector<Eigen::Index> chosen;
  chosen.reserve(static_cast<std::size_t>(want));
  chosen.push_back(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n))));

  std::vector<double> weight(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    weight[static_cast<std::size_t>(i)] =
        squared_distance(data.row(i).data(), data.row(chosen[0]).data(), d);
  }

  while (static_cast<Eigen::Index>(chosen.size()) < want) {
    double total = 0.0;
    for (double w : weight) total += w;
    if (!(total > 0.0)) break;  // every row coincides with a chosen center

    const double target = rng.uniform() * total;
    Eigen::Index pick = -1;
    double cumulative = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = weight[static_cast<std::size_t>(i)];
      if (w <= 0.0) continue;
      cumulative += w;
      pick = i;
      if (target < cumulative) break;
    }

    chosen.push_back(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double dist = squared_distance(data.row(i).data(), data.row(pick).data(), d);
      auto& w = weight[static_cast<std::size_t>(i)];
      if (dist < w) w = dist;
    }
  }

  Matrix centers(static_cast<Eigen::Index>(chosen.size()), d);
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    centers.row(static_cast<Eigen::Index>(c)) = data.row(chosen[c]);
  }
  return centers;
}

KMeansResult lloyd(const Matrix& data, const Matrix& init_centers, int max_iter, double tol) {
  check_data(data);
  if (init_centers.rows() == 0) throw Error(ErrorCode::kInvalidArgument, "no initial centers");
  if (init_centers.cols() != data.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "data and initial centers differ in dimension");
  }
  require_finite(init_centers, "initial centers");
  if (max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be >= 0");

  KMeansResult result;
  Matrix centers = init_centers;
  std::vector<int> previous;

  for (int iter = 0; iter < max_iter; ++iter) {
    Assignment a = assign(data, centers);
    result.inertia_history.push_back(a.inertia);
    ++result.iterations;

    // Unchanged assignment: centers are already the means of `previous`.
    if (a.index == previous) break;

    centers = drop_empty_and_average(data, a.index, centers.rows());
    previous = std::move(a.index);

    const auto& h = result.inertia_history;
    if (h.size() >= 2) {
      const double before = h[h.size() - 2];
      if (before - h.back() <= tol * before) break;
    }
  }

  result.inertia = inertia_of(data, centers, previous);
  result.centers = std::move(centers);
  result.assignments = std::move(previous);
  return result;
}

KMeansResult fit_kmeans(const Matrix& data, const KMeansConfig& config) {
  config.validate();
  check_data(data);

  KMeansResult best;
  double best_inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.n_restarts; ++r) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
    Matrix init = kmeans_pp_init(data, config.k, seed);
    KMeansResult candidate = lloyd(data, init, config.max_iter, config.tol);
    if (candidate.inertia < best_inertia) {
      best_inertia = candidate.inertia;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace superklust
