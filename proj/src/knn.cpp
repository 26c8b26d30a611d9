#include "superklust/bench.hpp"

#include "superklust/distance.hpp"

#include <algorithm>
#include <utility>

namespace superklust {

KnnModel knn_fit(const Dataset& train, int n_neighbors) {
  validate(train);
  if (n_neighbors < 1 || n_neighbors > train.size()) {
    throw Error(ErrorCode::kInvalidArgument, "n_neighbors must lie in [1, n_train]");
  }
  return {train.X, train.y, train.n_classes, n_neighbors};
}

Labels knn_predict(const KnnModel& model, const Matrix& X) {
  if (X.cols() != model.X.cols()) throw Error(ErrorCode::kDimensionMismatch, "query dimension does not match");
  require_finite(X, "query");

  const auto n_train = model.X.rows();
  const auto k = static_cast<std::size_t>(model.n_neighbors);
  Labels out(static_cast<std::size_t>(X.rows()));

#pragma omp parallel
  {
    std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(n_train));
    std::vector<int> votes(static_cast<std::size_t>(model.n_classes));
#pragma omp for schedule(static)
    for (Eigen::Index q = 0; q < X.rows(); ++q) {
      const double* x = X.row(q).data();
      for (Eigen::Index i = 0; i < n_train; ++i) {
        dist[static_cast<std::size_t>(i)] = {squared_distance(x, model.X.row(i).data(), X.cols()), i};
      }
      // pair ordering breaks distance ties by training index
      std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
      std::fill(votes.begin(), votes.end(), 0);
      for (std::size_t j = 0; j < k; ++j) {
        // nth_element leaves the k smallest in front, in no particular order
        ++votes[static_cast<std::size_t>(model.y[static_cast<std::size_t>(dist[j].second)])];
      }
      out[static_cast<std::size_t>(q)] =
          static_cast<ClassId>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    }
  }
  return out;
}

}  // namespace superklust
