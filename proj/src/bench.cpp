#include "superklust/bench.hpp"

#include "superklust/datasets.hpp"
#include "superklust/tessellation.hpp"

#include <chrono>
#include <cmath>

namespace superklust {

TimingStat time_op(const std::function<void()>& thunk, int repetitions, int warmup) {
  if (repetitions < 1) throw Error(ErrorCode::kInvalidArgument, "repetitions must be >= 1");
  if (warmup < 0) throw Error(ErrorCode::kInvalidArgument, "warmup must be >= 0");
  for (int i = 0; i < warmup; ++i) thunk();

  using clock = std::chrono::steady_clock;
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(repetitions));
  for (int i = 0; i < repetitions; ++i) {
    const auto start = clock::now();
    thunk();
    const auto stop = clock::now();
    samples.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }

  TimingStat stat;
  stat.repetitions = repetitions;
  double sum = 0.0;
  for (double s : samples) sum += s;
  stat.mean_ms = sum / repetitions;
  if (repetitions > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - stat.mean_ms) * (s - stat.mean_ms);
    stat.std_ms = std::sqrt(ss / (repetitions - 1));
  }
  return stat;
}

const BenchCell* BenchReport::find(const std::string& dataset, const std::string& algorithm) const {
  for (const auto& c : cells) {
    if (c.dataset == dataset && c.algorithm == algorithm) return &c;
  }
  return nullptr;
}

namespace {

FitConfig fit_config(const BenchConfig& config) {
  FitConfig fc;
  fc.kmeans.k = config.k;
  fc.kmeans.seed = config.seed;
  fc.kmeans.n_restarts = config.n_restarts;
  fc.kmeans.max_iter = config.max_iter;
  fc.kmeans.tol = config.tol;
  fc.max_correction_passes = config.max_correction_passes;
  return fc;
}

void run_superklust(const TrainTest& data, const BenchConfig& config, BenchCell& cell) {
  const FitConfig fc = fit_config(config);
  cell.train = time_op([&] { fit(data.train, fc); }, config.repetitions, config.warmup);

  const Model model = fit(data.train, fc);
  const DiscriminantBank bank = to_discriminants(model);
  cell.model_size = static_cast<long>(model.generators.size());
  cell.accuracy = evaluate(bank, data.test);
  cell.infer = time_op([&] { predict(bank, data.test.X); }, config.repetitions, config.warmup);
}

void run_knn(const TrainTest& data, const BenchConfig& config, BenchCell& cell) {
  cell.train = time_op([&] { knn_fit(data.train, config.n_neighbors); }, config.repetitions, config.warmup);

  const KnnModel model = knn_fit(data.train, config.n_neighbors);
  cell.model_size = static_cast<long>(model.X.rows());
  cell.accuracy = accuracy(knn_predict(model, data.test.X), data.test.y);
  cell.infer = time_op([&] { knn_predict(model, data.test.X); }, config.repetitions, config.warmup);
}

}  // namespace

BenchReport run_benchmark(const std::vector<BenchDataset>& datasets, const std::vector<std::string>& algorithms,
                          const BenchConfig& config) {
  BenchReport report;
  report.config = config;
  report.algorithms = algorithms;
  for (const auto& ds : datasets) report.datasets.push_back(ds.name);

  for (const auto& ds : datasets) {
    std::optional<TrainTest> data;
    std::optional<std::string> load_error;
    try {
      data = ds.load();
      if (config.standardize) {
        const ScalerParams params = standardize_fit(data->train);
        data->train = standardize_apply(params, data->train);
        data->test = standardize_apply(params, data->test);
      }
    } catch (const std::exception& e) {
      load_error = e.what();
    }

    for (const auto& algo : algorithms) {
      BenchCell cell;
      cell.dataset = ds.name;
      cell.algorithm = algo;
      if (load_error) {
        cell.error = *load_error;
      } else {
        try {
          if (algo == kAlgoSuperklust) {
            run_superklust(*data, config, cell);
          } else if (algo == kAlgoKnn) {
            run_knn(*data, config, cell);
          } else {
            throw Error(ErrorCode::kInvalidArgument, "unknown algorithm \"" + algo + "\"");
          }
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace superklust
