#include "superklust/datasets.hpp"

#include "superklust/rng.hpp"

#include <cmath>
#include <numbers>

namespace superklust {

namespace {

std::vector<std::string> numbered_classes(int n) {
  std::vector<std::string> names;
  for (int c = 0; c < n; ++c) names.push_back(std::to_string(c));
  return names;
}

void add_noise(Matrix& X, double sigma, std::uint64_t seed) {
  if (sigma == 0.0) return;
  Rng rng(seed);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) += sigma * rng.normal();
  }
}

void check_even(int n) {
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "n must be an even integer >= 2, got " + std::to_string(n));
  }
}

void check_noise(double noise) {
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw Error(ErrorCode::kInvalidArgument, "noise must be a finite value >= 0");
  }
}

}  // namespace

Dataset make_moons(int n, double noise, std::uint64_t seed) {
  check_even(n);
  check_noise(noise);
  const int half = n / 2;
  Dataset ds;
  ds.X.resize(n, 2);
  ds.y.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < half; ++i) {
    const double t = half == 1 ? 0.0 : std::numbers::pi * i / (half - 1);
    ds.X(i, 0) = std::cos(t);
    ds.X(i, 1) = std::sin(t);
    ds.y[static_cast<std::size_t>(i)] = 0;
    ds.X(half + i, 0) = 1.0 - std::cos(t);
    ds.X(half + i, 1) = 0.5 - std::sin(t);
    ds.y[static_cast<std::size_t>(half + i)] = 1;
  }
  add_noise(ds.X, noise, seed);
  ds.n_classes = 2;
  ds.name = "moons";
  ds.class_names = numbered_classes(2);
  return ds;
}

Dataset make_circles(int n, double factor, double noise, std::uint64_t seed) {
  check_even(n);
  check_noise(noise);
  if (!(factor > 0.0 && factor < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "factor must lie in (0, 1)");
  }
  const int half = n / 2;
  Dataset ds;
  ds.X.resize(n, 2);
  ds.y.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < half; ++i) {
    const double t = 2.0 * std::numbers::pi * i / half;
    ds.X(i, 0) = std::cos(t);
    ds.X(i, 1) = std::sin(t);
    ds.y[static_cast<std::size_t>(i)] = 0;
    ds.X(half + i, 0) = factor * std::cos(t);
    ds.X(half + i, 1) = factor * std::sin(t);
    ds.y[static_cast<std::size_t>(half + i)] = 1;
  }
  add_noise(ds.X, noise, seed);
  ds.n_classes = 2;
  ds.name = "circles";
  ds.class_names = numbered_classes(2);
  return ds;
}

Dataset make_gaussian_blobs(int n_per_class, const Matrix& centers, double sigma, std::uint64_t seed) {
  if (centers.rows() < 1 || centers.cols() < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one center");
  if (n_per_class < 1) throw Error(ErrorCode::kInvalidArgument, "n_per_class must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::kInvalidArgument, "sigma must be > 0");
  require_finite(centers, "blob centers");

  const auto classes = centers.rows();
  Dataset ds;
  ds.X.resize(classes * n_per_class, centers.cols());
  ds.y.resize(static_cast<std::size_t>(ds.X.rows()));
  Rng rng(seed);
  for (Eigen::Index c = 0; c < classes; ++c) {
    for (int i = 0; i < n_per_class; ++i) {
      const Eigen::Index r = c * n_per_class + i;
      for (Eigen::Index j = 0; j < centers.cols(); ++j) ds.X(r, j) = centers(c, j) + sigma * rng.normal();
      ds.y[static_cast<std::size_t>(r)] = static_cast<ClassId>(c);
    }
  }
  ds.n_classes = static_cast<int>(classes);
  ds.name = "blobs";
  ds.class_names = numbered_classes(ds.n_classes);
  return ds;
}

}  // namespace superklust
