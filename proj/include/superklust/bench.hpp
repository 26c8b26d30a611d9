#pragma once

#include "superklust/dataset.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace superklust {

struct TimingStat {
  double mean_ms = 0.0;
  double std_ms = 0.0;  // sample standard deviation; 0 when repetitions == 1
  int repetitions = 0;
};

/// Runs `thunk` `warmup` times untimed, then `repetitions` times against the
/// steady clock. Exceptions from the thunk propagate.
TimingStat time_op(const std::function<void()>& thunk, int repetitions, int warmup);

// ---------------------------------------------------------------------------
// Brute-force KNN baseline.

struct KnnModel {
  Matrix X;
  Labels y;
  int n_classes = 0;
  int n_neighbors = 1;
};

KnnModel knn_fit(const Dataset& train, int n_neighbors);

/// Exact Euclidean neighbours by full scan. Distance ties go to the lower
/// training index; vote ties to the lowest class id.
Labels knn_predict(const KnnModel& model, const Matrix& X);

// ---------------------------------------------------------------------------
// Harness.

inline constexpr const char* kAlgoSuperklust = "superklust";
inline constexpr const char* kAlgoKnn = "knn";

struct BenchConfig {
  int k = 10;
  std::uint64_t seed = 0;
  int n_restarts = 4;
  int max_iter = 100;
  double tol = 1e-6;
  int max_correction_passes = 20;
  int n_neighbors = 3;
  int repetitions = 10;
  int warmup = 2;
  bool standardize = true;
  int threads = 1;
};

struct BenchDataset {
  std::string name;
  std::function<TrainTest()> load;
};

struct BenchCell {
  std::string dataset;
  std::string algorithm;
  double accuracy = 0.0;
  TimingStat train;
  TimingStat infer;
  long model_size = 0;  // generators for superklust, stored samples for knn
  std::optional<std::string> error;
};

struct BenchReport {
  BenchConfig config;
  std::vector<std::string> datasets;
  std::vector<std::string> algorithms;
  std::vector<BenchCell> cells;

  const BenchCell* find(const std::string& dataset, const std::string& algorithm) const;
};

/// One cell per (dataset, algorithm), run strictly one after another.
/// Training time covers the full fit; inference time covers predicting the
/// whole test set; accuracy is computed once from a separate fit. Data
/// loading and standardization are outside the timed region. A failure is
/// recorded in its cell and the remaining cells still run.
BenchReport run_benchmark(const std::vector<BenchDataset>& datasets, const std::vector<std::string>& algorithms,
                          const BenchConfig& config);

enum class ReportFormat { kMarkdown, kCsv };

// Rows are algorithms, columns are datasets. Markdown timing cells read
// "mean(std)"; the CSV keeps full precision with mean and std in separate
// tables so it parses back exactly.
std::string emit_report(const BenchReport& report, ReportFormat format);
BenchReport parse_report_csv(const std::string& text);

}  // namespace superklust
