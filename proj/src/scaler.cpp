#include "superklust/datasets.hpp"

#include <cmath>

namespace superklust {

ScalerParams standardize_fit(const Dataset& train) {
  if (train.size() == 0) throw Error(ErrorCode::kEmptyInput, "empty input");
  const auto n = static_cast<double>(train.size());
  ScalerParams params;
  params.mean = train.X.colwise().sum() / n;
  params.scale.resize(train.dim());
  for (Eigen::Index j = 0; j < train.dim(); ++j) {
    const double var = (train.X.col(j).array() - params.mean[j]).square().sum() / n;
    const double sd = std::sqrt(var);
    params.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return params;
}

Dataset standardize_apply(const ScalerParams& params, const Dataset& ds) {
  if (params.mean.size() != ds.dim() || params.scale.size() != ds.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "scaler dimension does not match dataset");
  }
  Dataset out = ds;
  out.X = (ds.X.rowwise() - params.mean).array().rowwise() / params.scale.array();
  return out;
}

Matrix standardize_invert(const ScalerParams& params, const Matrix& X) {
  if (params.mean.size() != X.cols()) throw Error(ErrorCode::kDimensionMismatch, "scaler dimension mismatch");
  Matrix out = (X.array().rowwise() * params.scale.array()).matrix();
  out.rowwise() += params.mean;
  return out;
}

}  // namespace superklust
