#pragma once

#include "superklust/clustering.hpp"
#include "superklust/common.hpp"
#include "superklust/dataset.hpp"

#include <string>
#include <vector>

namespace superklust {

/// A labeled Voronoi site: a cluster mean plus the class it votes for.
struct Generator {
  RowVector point;
  ClassId label = 0;
  ClassId source_class = 0;

  // Coordinate-wise value equality; points of different length compare unequal.
  bool operator==(const Generator& other) const {
    return label == other.label && source_class == other.source_class && point.size() == other.point.size() &&
           (point.array() == other.point.array()).all();
  }
};

/// Labeled Voronoi tessellation. Generator order is fixed at assembly and
/// decides ties: the lowest global index wins.
struct Model {
  std::vector<Generator> generators;
  int n_classes = 0;
  int d = 0;
  int k = 0;
  int correction_iterations = 0;
  // Original label text per class id; optional (empty when unknown).
  std::vector<std::string> class_names;

  bool operator==(const Model&) const = default;

  // Checks sizes, label range and finiteness; throws Error on violation.
  void validate() const;
  // Stacks generator points into a G x d matrix.
  Matrix points() const;
  Labels labels() const;
};

/// Linear forms w_i = 2 g_i, b_i = -|g_i|^2. Since |x - g|^2 = |x|^2 - (w.x + b)
/// and |x|^2 is shared by every generator, argmax of the scores is the
/// nearest generator.
struct DiscriminantBank {
  Matrix weights;  // G x d
  Vector biases;   // G
  Labels labels;   // G

  Eigen::Index size() const { return weights.rows(); }
  Eigen::Index dim() const { return weights.cols(); }
};

// Single-precision copy of a bank. Opt-in for inference only.
struct DiscriminantBankF32 {
  MatrixF weights;
  Eigen::VectorXf biases;
  Labels labels;
};

/// Concatenates per-class centers in ascending class order; class c's rows
/// become generators labeled c. Empty matrices contribute nothing.
Model assemble(const std::vector<Matrix>& per_class_centers);

DiscriminantBank to_discriminants(const Model& model);
DiscriminantBankF32 to_single_precision(const DiscriminantBank& bank);

/// Piecewise-linear inference: one matrix product, bias add, row-wise argmax
/// with ties to the lowest generator index.
Labels predict(const DiscriminantBank& bank, const Matrix& X);
Labels predict(const DiscriminantBankF32& bank, const Matrix& X);

// Index of the winning generator per row (same rule as predict).
std::vector<int> predict_index(const DiscriminantBank& bank, const Matrix& X);

/// Reference inference by explicit squared distances, O(G d) per query.
/// Same tie rule as predict. Exists to validate predict.
Labels predict_oracle(const Model& model, const Matrix& X);
std::vector<int> nearest_generator(const Model& model, const Matrix& X);

struct CorrectionTrace {
  // Training accuracy of the partition before the first pass, then after each pass.
  std::vector<double> train_accuracy;
};

/// Correction stage. Each pass partitions the training samples by nearest
/// generator, relabels every generator to the majority class of its cell
/// (keeping its current label when that is tied for the majority, otherwise
/// the lowest tied class id), and removes generators whose cell is empty.
/// Stops after a pass that changes nothing or after `max_passes` passes;
/// every pass adds one to `correction_iterations`. Generators never move.
Model correct(const Model& model, const Dataset& train, int max_passes,
              CorrectionTrace* trace = nullptr);

struct FitConfig {
  KMeansConfig kmeans;
  int max_correction_passes = 20;
  // Extension point for per-class k; empty means the shared kmeans.k.
  std::vector<int> per_class_k;
};

/// Per-class k-means with a shared k, assembly, then correction. Class c is
/// clustered with seed `kmeans.seed + c * kmeans.n_restarts`, so every
/// (class, restart) pair draws from its own stream.
Model fit(const Dataset& train, const FitConfig& config, CorrectionTrace* trace = nullptr);

double accuracy(const Labels& predicted, const Labels& truth);
double evaluate(const DiscriminantBank& bank, const Dataset& test);
double evaluate(const Model& model, const Dataset& test);

}  // namespace superklust
