// superklust: command-line front end.
//
// Exit codes: 0 success, 1 runtime or IO failure, 2 usage error.

#include "superklust/bench.hpp"
#include "superklust/datasets.hpp"
#include "superklust/model_io.hpp"
#include "superklust/tessellation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sk = superklust;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

sk::LabelColumn parse_label_column(const std::string& text) {
  if (text == "none") return sk::NoLabel{};
  int idx = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
  if (ec == std::errc() && ptr == text.data() + text.size()) return idx;
  return text;
}

std::pair<double, double> parse_range(const std::string& flag, const std::string& text) {
  const auto comma = text.find(',');
  double lo = 0.0, hi = 0.0;
  bool ok = comma != std::string::npos;
  if (ok) {
    auto a = std::from_chars(text.data(), text.data() + comma, lo);
    auto b = std::from_chars(text.data() + comma + 1, text.data() + text.size(), hi);
    ok = a.ec == std::errc() && a.ptr == text.data() + comma && b.ec == std::errc() &&
         b.ptr == text.data() + text.size();
  }
  if (!ok || !(lo < hi)) throw UsageError(flag + ": expected \"lo,hi\" with lo < hi, got \"" + text + "\"");
  return {lo, hi};
}

sk::Matrix parse_centers(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<double> values;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw UsageError("--centers: cannot parse \"" + cell + "\"");
      }
      values.push_back(v);
    }
    if (values.empty() || (!rows.empty() && values.size() != rows.front().size())) {
      throw UsageError("--centers: rows must be non-empty and equally long");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw UsageError("--centers: no centers given");
  sk::Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void set_threads(int threads) {
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
  Eigen::setNbThreads(threads);
}

template <typename Fn>
void write_output(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sk::Error(sk::ErrorCode::kIo, "cannot open " + path + " for writing");
  write(out);
  if (!out) throw sk::Error(sk::ErrorCode::kIo, "write failed: " + path);
}

// ---------------------------------------------------------------------------
// Scaler files written by `fit --scaler-out` and read by `predict --scaler`.

void save_scaler(const sk::ScalerParams& p, const std::string& path) {
  nlohmann::json doc;
  doc["mean"] = std::vector<double>(p.mean.data(), p.mean.data() + p.mean.size());
  doc["scale"] = std::vector<double>(p.scale.data(), p.scale.data() + p.scale.size());
  write_output(path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

sk::ScalerParams load_scaler(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sk::Error(sk::ErrorCode::kIo, "cannot open " + path);
  try {
    const auto doc = nlohmann::json::parse(in);
    const auto mean = doc.at("mean").get<std::vector<double>>();
    const auto scale = doc.at("scale").get<std::vector<double>>();
    if (mean.size() != scale.size()) throw sk::Error(sk::ErrorCode::kMalformed, "scaler size mismatch");
    sk::ScalerParams p;
    p.mean = Eigen::Map<const sk::RowVector>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    p.scale = Eigen::Map<const sk::RowVector>(scale.data(), static_cast<Eigen::Index>(scale.size()));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw sk::Error(sk::ErrorCode::kMalformed, "malformed scaler file " + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct SynthOptions {
  std::string kind = "moons";
  int n = 400;
  double noise = 0.1;
  double factor = 0.5;
  double sigma = 1.0;
  std::string centers = "-2,-2;2,2";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthOptions& o) {
  sk::Dataset ds;
  if (o.kind == "moons") {
    if (o.n % 2 != 0) throw UsageError("--n must be even for moons");
    ds = sk::make_moons(o.n, o.noise, o.seed);
  } else if (o.kind == "circles") {
    if (o.n % 2 != 0) throw UsageError("--n must be even for circles");
    ds = sk::make_circles(o.n, o.factor, o.noise, o.seed);
  } else {
    const sk::Matrix centers = parse_centers(o.centers);
    if (o.n % centers.rows() != 0) throw UsageError("--n must be a multiple of the number of --centers");
    ds = sk::make_gaussian_blobs(o.n / static_cast<int>(centers.rows()), centers, o.sigma, o.seed);
  }
  write_output(o.out, [&](std::ostream& out) { sk::write_csv(ds, out); });
  return kExitOk;
}

struct DataOptions {
  std::string path;
  std::string label_col = "-1";
  bool no_header = false;
};

sk::Dataset load_data(const DataOptions& o) {
  return sk::load_csv(o.path, parse_label_column(o.label_col), !o.no_header);
}

struct FitOptions {
  DataOptions data;
  int k = 10;
  std::uint64_t seed = 0;
  int restarts = 4;
  int max_iter = 100;
  double tol = 1e-6;
  int correction_passes = 20;
  bool standardize = false;
  std::string scaler_out;
  std::string out;
  int threads = 1;
};

int cmd_fit(const FitOptions& o) {
  if (o.standardize && o.scaler_out.empty()) throw UsageError("--standardize requires --scaler-out");
  set_threads(o.threads);
  sk::Dataset train = load_data(o.data);
  if (o.standardize) {
    const auto params = sk::standardize_fit(train);
    train = sk::standardize_apply(params, train);
    save_scaler(params, o.scaler_out);
  }
  sk::FitConfig cfg;
  cfg.kmeans.k = o.k;
  cfg.kmeans.seed = o.seed;
  cfg.kmeans.n_restarts = o.restarts;
  cfg.kmeans.max_iter = o.max_iter;
  cfg.kmeans.tol = o.tol;
  cfg.max_correction_passes = o.correction_passes;
  const sk::Model model = sk::fit(train, cfg);
  sk::save_model_file(model, o.out);
  std::cout << "generators: " << model.generators.size() << '\n'
            << "correction passes: " << model.correction_iterations << '\n'
            << "training accuracy: " << sk::format_double(sk::evaluate(model, train)) << '\n';
  return kExitOk;
}

struct PredictOptions {
  std::string model;
  DataOptions data;
  std::string scaler;
  std::string out;
  int threads = 1;
};

int cmd_predict(const PredictOptions& o) {
  set_threads(o.threads);
  const sk::Model model = sk::load_model_file(o.model);
  sk::Dataset ds = load_data(o.data);
  if (!o.scaler.empty()) ds = sk::standardize_apply(load_scaler(o.scaler), ds);
  const sk::Labels predicted = sk::predict(sk::to_discriminants(model), ds.X);

  auto name_of = [&](sk::ClassId c) {
    const auto i = static_cast<std::size_t>(c);
    return i < model.class_names.size() ? model.class_names[i] : std::to_string(c);
  };
  write_output(o.out, [&](std::ostream& out) {
    out << "label\n";
    for (auto c : predicted) out << name_of(c) << '\n';
  });

  if (!std::holds_alternative<sk::NoLabel>(parse_label_column(o.data.label_col))) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      hits += name_of(predicted[i]) == ds.class_names[static_cast<std::size_t>(ds.y[i])] ? 1 : 0;
    }
    std::cerr << "accuracy: " << sk::format_double(static_cast<double>(hits) / static_cast<double>(predicted.size()))
              << '\n';
  }
  return kExitOk;
}

struct GridOptions {
  std::string model;
  std::string x_range = "-3,3";
  std::string y_range = "-3,3";
  int resolution = 200;
  std::string out;
};

int cmd_grid(const GridOptions& o) {
  const auto xr = parse_range("--x-range", o.x_range);
  const auto yr = parse_range("--y-range", o.y_range);
  const sk::Model model = sk::load_model_file(o.model);
  const auto grid = sk::decision_grid(sk::to_discriminants(model), xr, yr, o.resolution);
  write_output(o.out, [&](std::ostream& out) { sk::write_grid_csv(grid, out); });
  return kExitOk;
}

struct BenchOptions {
  std::vector<std::string> datasets{"optdigits", "satimage", "letter"};
  std::vector<std::string> algos{sk::kAlgoSuperklust, sk::kAlgoKnn};
  sk::BenchConfig config;
  bool no_standardize = false;
  std::string data_dir;
  std::string format = "markdown";
  std::string out;
};

sk::BenchDataset bench_dataset(const std::string& name, const std::filesystem::path& data_dir, std::uint64_t seed) {
  if (name == "moons") {
    return {name, [seed] { return sk::TrainTest{sk::make_moons(1000, 0.2, seed), sk::make_moons(1000, 0.2, seed + 1)}; }};
  }
  if (name == "circles") {
    return {name, [seed] {
              return sk::TrainTest{sk::make_circles(1000, 0.5, 0.1, seed), sk::make_circles(1000, 0.5, 0.1, seed + 1)};
            }};
  }
  if (name == "blobs") {
    return {name, [seed] {
              sk::Matrix centers(3, 2);
              centers << -2, -2, 2, 2, -2, 2;
              return sk::TrainTest{sk::make_gaussian_blobs(500, centers, 1.0, seed),
                                   sk::make_gaussian_blobs(500, centers, 1.0, seed + 1)};
            }};
  }
  sk::find_benchmark_dataset(name);
  return {name, [name, data_dir] { return sk::load_benchmark_dataset(name, data_dir); }};
}

int cmd_bench(BenchOptions o) {
  o.config.standardize = !o.no_standardize;
  set_threads(o.config.threads);
  const auto data_dir = sk::resolve_data_dir(o.data_dir);
  std::vector<sk::BenchDataset> datasets;
  for (const auto& name : o.datasets) {
    try {
      datasets.push_back(bench_dataset(name, data_dir, o.config.seed));
    } catch (const sk::Error& e) {
      throw UsageError(std::string("--datasets: ") + e.what());
    }
  }
  for (const auto& a : o.algos) {
    if (a != sk::kAlgoSuperklust && a != sk::kAlgoKnn) throw UsageError("--algos: unknown algorithm \"" + a + "\"");
  }
  const auto report = sk::run_benchmark(datasets, o.algos, o.config);
  const auto format = o.format == "csv" ? sk::ReportFormat::kCsv : sk::ReportFormat::kMarkdown;
  write_output(o.out, [&](std::ostream& out) { out << sk::emit_report(report, format); });

  bool failed = false;
  for (const auto& c : report.cells) {
    if (c.error) {
      std::cerr << "error: " << c.dataset << "/" << c.algorithm << ": " << *c.error << '\n';
      failed = true;
    }
  }
  return failed ? kExitRuntime : kExitOk;
}

struct FetchOptions {
  std::vector<std::string> datasets{"optdigits", "satimage", "letter"};
  std::string data_dir;
  std::string script = SUPERKLUST_FETCH_SCRIPT;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

int cmd_fetch(const FetchOptions& o) {
  for (const auto& name : o.datasets) {
    try {
      sk::find_benchmark_dataset(name);
    } catch (const sk::Error& e) {
      throw UsageError(std::string("--datasets: ") + e.what());
    }
  }
  std::string cmd = "python3 " + shell_quote(o.script) + " --data-dir " +
                    shell_quote(sk::resolve_data_dir(o.data_dir).string());
  for (const auto& name : o.datasets) cmd += " " + shell_quote(name);
  const int status = std::system(cmd.c_str());
  return status == 0 ? kExitOk : kExitRuntime;
}

void add_data_flags(CLI::App* app, DataOptions& o) {
  app->add_option("--data", o.path, "Input CSV file")->required();
  app->add_option("--label-col", o.label_col,
                  "Label column: index (negative counts from the end), header name, or \"none\"")
      ->capture_default_str();
  app->add_flag("--no-header", o.no_header, "Input has no header row");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise-linear classification with per-class k-means generators"};
  app.require_subcommand(1, 1);
  app.get_formatter()->column_width(40);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset as CSV");
  synth_cmd->add_option("--kind", synth.kind, "moons, circles or blobs")
      ->check(CLI::IsMember({"moons", "circles", "blobs"}))
      ->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "Total number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise, "Gaussian noise std (moons, circles)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth_cmd->add_option("--factor", synth.factor, "Inner/outer radius ratio, in (0,1) (circles)")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0 && v < 1.0)) {
              return "must lie in the open interval (0, 1)";
            }
            return {};
          },
          "(0,1)"))
      ->capture_default_str();
  synth_cmd->add_option("--sigma", synth.sigma, "Blob standard deviation (blobs)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--centers", synth.centers, "Blob centers \"x,y;x,y;...\" (blobs)")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output CSV path")->required();

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model and save it as JSON");
  add_data_flags(fit_cmd, fit.data);
  fit_cmd->add_option("--k", fit.k, "Clusters per class")->check(CLI::PositiveNumber)->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed, "Random seed")->capture_default_str();
  fit_cmd->add_option("--restarts", fit.restarts, "k-means restarts per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit_cmd->add_option("--max-iter", fit.max_iter, "Lloyd iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  fit_cmd->add_option("--tol", fit.tol, "Relative inertia stopping threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  fit_cmd->add_option("--correction-passes", fit.correction_passes, "Correction pass cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit_cmd->add_flag("--standardize", fit.standardize, "Standardize features before fitting");
  fit_cmd->add_option("--scaler-out", fit.scaler_out, "Where to write the scaler (with --standardize)");
  fit_cmd->add_option("--threads", fit.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  fit_cmd->add_option("--out", fit.out, "Output model JSON path")->required();

  PredictOptions pred;
  auto* pred_cmd = app.add_subcommand("predict", "Label a CSV file with a saved model");
  pred_cmd->add_option("--model", pred.model, "Model JSON")->required();
  add_data_flags(pred_cmd, pred.data);
  pred_cmd->add_option("--scaler", pred.scaler, "Scaler JSON written by fit --scaler-out");
  pred_cmd->add_option("--threads", pred.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  pred_cmd->add_option("--out", pred.out, "Output CSV path (default stdout)");

  GridOptions grid;
  auto* grid_cmd = app.add_subcommand("grid", "Export a decision grid for a 2-D model");
  grid_cmd->add_option("--model", grid.model, "Model JSON")->required();
  grid_cmd->add_option("--x-range", grid.x_range, "x range \"lo,hi\"")->capture_default_str();
  grid_cmd->add_option("--y-range", grid.y_range, "y range \"lo,hi\"")->capture_default_str();
  grid_cmd->add_option("--resolution", grid.resolution, "Points per axis (>= 2)")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  grid_cmd->add_option("--out", grid.out, "Output CSV path (default stdout)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Accuracy and timing table");
  bench_cmd->add_option("--datasets", bench.datasets,
                        "optdigits, usps, satimage, letter, isolet, or synthetic moons, circles, blobs")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--algos", bench.algos, "superklust, knn")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--k", bench.config.k, "Clusters per class")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--seed", bench.config.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--restarts", bench.config.n_restarts, "k-means restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--neighbors", bench.config.n_neighbors, "KNN neighbours")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--repetitions", bench.config.repetitions, "Timed runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--warmup", bench.config.warmup, "Untimed warmup runs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_flag("--no-standardize", bench.no_standardize, "Use raw features");
  bench_cmd->add_option("--threads", bench.config.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--data-dir", bench.data_dir, "Dataset directory (default $DATA_DIR or ./data)");
  bench_cmd->add_option("--format", bench.format, "markdown or csv")
      ->check(CLI::IsMember({"markdown", "csv"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Report path (default stdout)");

  FetchOptions fetch;
  auto* fetch_cmd = app.add_subcommand("fetch", "Download benchmark datasets into the data directory");
  fetch_cmd->add_option("--datasets", fetch.datasets, "Datasets to fetch")->delimiter(',')->capture_default_str();
  fetch_cmd->add_option("--data-dir", fetch.data_dir, "Dataset directory (default $DATA_DIR or ./data)");
  fetch_cmd->add_option("--script", fetch.script, "Fetch script")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth_cmd) return cmd_synth(synth);
    if (*fit_cmd) return cmd_fit(fit);
    if (*pred_cmd) return cmd_predict(pred);
    if (*grid_cmd) return cmd_grid(grid);
    if (*bench_cmd) return cmd_bench(bench);
    if (*fetch_cmd) return cmd_fetch(fetch);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
