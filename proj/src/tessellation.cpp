#include "superklust/tessellation.hpp"

#include "superklust/distance.hpp"

#include <algorithm>

namespace superklust {

void Model::validate() const {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "model dimension must be >= 1");
  if (n_classes < 1) throw Error(ErrorCode::kInvalidArgument, "model needs at least one class");
  if (generators.empty()) throw Error(ErrorCode::kDegenerate, "model has no generators");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.point.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "generator " + std::to_string(i) + " has wrong dimension");
    }
    if (!g.point.allFinite()) {
      throw Error(ErrorCode::kNonFinite, "generator " + std::to_string(i) + " is not finite");
    }
    if (g.label < 0 || g.label >= n_classes) {
      throw Error(ErrorCode::kInvalidArgument, "generator " + std::to_string(i) + " label out of range");
    }
  }
  if (!class_names.empty() && static_cast<int>(class_names.size()) != n_classes) {
    throw Error(ErrorCode::kInvalidArgument, "class_names must list one name per class");
  }
}

Matrix Model::points() const {
  Matrix out(static_cast<Eigen::Index>(generators.size()), d);
  for (std::size_t i = 0; i < generators.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = generators[i].point;
  return out;
}

Labels Model::labels() const {
  Labels out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.label);
  return out;
}

Model assemble(const std::vector<Matrix>& per_class_centers) {
  if (per_class_centers.empty()) throw Error(ErrorCode::kEmptyInput, "no classes");
  Eigen::Index d = -1;
  for (const auto& m : per_class_centers) {
    if (m.rows() == 0) continue;
    if (d < 0) d = m.cols();
    if (m.cols() != d) throw Error(ErrorCode::kDimensionMismatch, "class centers differ in dimension");
  }
  if (d < 0) throw Error(ErrorCode::kEmptyInput, "zero generators");

  Model model;
  model.n_classes = static_cast<int>(per_class_centers.size());
  model.d = static_cast<int>(d);
  for (std::size_t c = 0; c < per_class_centers.size(); ++c) {
    const auto& m = per_class_centers[c];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      model.generators.push_back({m.row(r), static_cast<ClassId>(c), static_cast<ClassId>(c)});
    }
  }
  return model;
}

DiscriminantBank to_discriminants(const Model& model) {
  model.validate();
  const auto g = static_cast<Eigen::Index>(model.generators.size());
  DiscriminantBank bank;
  bank.weights.resize(g, model.d);
  bank.biases.resize(g);
  bank.labels = model.labels();
  for (Eigen::Index i = 0; i < g; ++i) {
    const auto& p = model.generators[static_cast<std::size_t>(i)].point;
    double norm2 = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      bank.weights(i, j) = 2.0 * p[j];
      norm2 += p[j] * p[j];
    }
    bank.biases[i] = -norm2;
  }
  return bank;
}

DiscriminantBankF32 to_single_precision(const DiscriminantBank& bank) {
  return {bank.weights.cast<float>(), bank.biases.cast<float>(), bank.labels};
}

namespace {

constexpr Eigen::Index kBlockRows = 1024;

void check_queries(const Matrix& X, Eigen::Index d) {
  if (X.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query dimension " + std::to_string(X.cols()) + " does not match model dimension " +
                    std::to_string(d));
  }
  require_finite(X, "query");
}

template <typename Scores>
void argmax_rows(const Scores& scores, Eigen::Index offset, std::vector<int>& out) {
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    Eigen::Index best = 0;
    auto best_score = scores(r, 0);
    for (Eigen::Index c = 1; c < scores.cols(); ++c) {
      if (scores(r, c) > best_score) {
        best_score = scores(r, c);
        best = c;
      }
    }
    out[static_cast<std::size_t>(offset + r)] = static_cast<int>(best);
  }
}

template <typename WeightMatrix, typename BiasVector, typename Queries>
std::vector<int> argmax_index(const WeightMatrix& weights, const BiasVector& biases, const Queries& X) {
  using Scalar = typename WeightMatrix::Scalar;
  using ScoreMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  if (weights.rows() == 0) throw Error(ErrorCode::kDegenerate, "empty discriminant bank");
  ScoreMatrix scores;
  for (Eigen::Index start = 0; start < X.rows(); start += kBlockRows) {
    const Eigen::Index rows = std::min(kBlockRows, X.rows() - start);
    scores.noalias() = X.middleRows(start, rows) * weights.transpose();
    scores.rowwise() += biases.transpose();
    argmax_rows(scores, start, out);
  }
  return out;
}

Labels to_labels(const std::vector<int>& index, const Labels& labels) {
  Labels out(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) out[i] = labels[static_cast<std::size_t>(index[i])];
  return out;
}

}  // namespace

std::vector<int> predict_index(const DiscriminantBank& bank, const Matrix& X) {
  check_queries(X, bank.dim());
  return argmax_index(bank.weights, bank.biases, X);
}

Labels predict(const DiscriminantBank& bank, const Matrix& X) {
  return to_labels(predict_index(bank, X), bank.labels);
}

Labels predict(const DiscriminantBankF32& bank, const Matrix& X) {
  check_queries(X, bank.weights.cols());
  const MatrixF Xf = X.cast<float>();
  return to_labels(argmax_index(bank.weights, bank.biases, Xf), bank.labels);
}

std::vector<int> nearest_generator(const Model& model, const Matrix& X) {
  model.validate();
  check_queries(X, model.d);
  const Matrix points = model.points();
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double* x = X.row(i).data();
    int best = 0;
    double best_dist = squared_distance(x, points.row(0).data(), model.d);
    for (Eigen::Index g = 1; g < points.rows(); ++g) {
      const double dist = squared_distance(x, points.row(g).data(), model.d);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(g);
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

Labels predict_oracle(const Model& model, const Matrix& X) {
  return to_labels(nearest_generator(model, X), model.labels());
}

Model correct(const Model& model, const Dataset& train, int max_passes, CorrectionTrace* trace) {
  if (max_passes < 1) throw Error(ErrorCode::kInvalidArgument, "max_passes must be >= 1");
  validate(train);
  if (train.dim() != model.d) {
    throw Error(ErrorCode::kDimensionMismatch, "training data dimension does not match model");
  }
  if (train.n_classes > model.n_classes) {
    throw Error(ErrorCode::kInvalidArgument, "training labels exceed model classes");
  }

  Model current = model;
  const auto n_classes = static_cast<std::size_t>(current.n_classes);
  const auto n = static_cast<double>(train.size());

  for (int pass = 0; pass < max_passes; ++pass) {
    const auto cell = nearest_generator(current, train.X);
    const std::size_t g_count = current.generators.size();
    std::vector<Eigen::Index> counts(g_count * n_classes, 0);
    std::vector<Eigen::Index> sizes(g_count, 0);
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const auto g = static_cast<std::size_t>(cell[i]);
      ++counts[g * n_classes + static_cast<std::size_t>(train.y[i])];
      ++sizes[g];
    }

    Eigen::Index correct_before = 0;
    Eigen::Index correct_after = 0;
    bool changed = false;
    std::vector<Generator> kept;
    kept.reserve(g_count);
    for (std::size_t g = 0; g < g_count; ++g) {
      Generator gen = current.generators[g];
      const Eigen::Index* row = &counts[g * n_classes];
      correct_before += row[gen.label];
      if (sizes[g] == 0) {
        changed = true;
        continue;
      }
      const Eigen::Index top = *std::max_element(row, row + n_classes);
      if (row[gen.label] != top) {
        const auto winner = std::find(row, row + n_classes, top) - row;
        gen.label = static_cast<ClassId>(winner);
        changed = true;
      }
      correct_after += row[gen.label];
      kept.push_back(std::move(gen));
    }

    if (trace) {
      if (trace->train_accuracy.empty()) trace->train_accuracy.push_back(static_cast<double>(correct_before) / n);
      trace->train_accuracy.push_back(static_cast<double>(correct_after) / n);
    }

    if (kept.empty()) throw Error(ErrorCode::kDegenerate, "degenerate correction");
    current.generators = std::move(kept);
    ++current.correction_iterations;
    if (!changed) break;
  }
  return current;
}

Model fit(const Dataset& train, const FitConfig& config, CorrectionTrace* trace) {
  validate(train);
  config.kmeans.validate();
  if (!config.per_class_k.empty() &&
      static_cast<int>(config.per_class_k.size()) != train.n_classes) {
    throw Error(ErrorCode::kInvalidArgument, "per_class_k must list one k per class");
  }

  std::vector<Matrix> centers(static_cast<std::size_t>(train.n_classes));
  for (ClassId c = 0; c < train.n_classes; ++c) {
    Matrix rows = rows_of_class(train, c);
    if (rows.rows() == 0) continue;
    KMeansConfig cfg = config.kmeans;
    if (!config.per_class_k.empty()) cfg.k = config.per_class_k[static_cast<std::size_t>(c)];
    cfg.seed = config.kmeans.seed + static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(cfg.n_restarts);
    centers[static_cast<std::size_t>(c)] = fit_kmeans(rows, cfg).centers;
  }

  Model model = assemble(centers);
  model.k = config.kmeans.k;
  model.class_names = train.class_names;
  return correct(model, train, config.max_correction_passes, trace);
}

double accuracy(const Labels& predicted, const Labels& truth) {
  if (truth.empty()) throw Error(ErrorCode::kEmptyInput, "empty test set");
  if (predicted.size() != truth.size()) throw Error(ErrorCode::kDimensionMismatch, "label count mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double evaluate(const DiscriminantBank& bank, const Dataset& test) {
  if (test.size() == 0) throw Error(ErrorCode::kEmptyInput, "empty test set");
  return accuracy(predict(bank, test.X), test.y);
}

double evaluate(const Model& model, const Dataset& test) {
  return evaluate(to_discriminants(model), test);
}

}  // namespace superklust
