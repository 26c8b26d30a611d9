#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace superklust {

// Samples are stored one per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

using ClassId = std::int32_t;
using Labels = std::vector<ClassId>;

enum class ErrorCode {
  kInvalidArgument,
  kEmptyInput,
  kNonFinite,
  kDimensionMismatch,
  kDegenerate,
  kParse,
  kIo,
  kMalformed,
  kVersionMismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws kNonFinite naming the first offending row.
void require_finite(const Matrix& m, const char* what);

}  // namespace superklust
