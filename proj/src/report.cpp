#include "superklust/bench.hpp"

#include "superklust/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace superklust {

namespace {

std::vector<std::pair<std::string, std::string>> config_entries(const BenchConfig& c) {
  return {
      {"k", std::to_string(c.k)},
      {"seed", std::to_string(c.seed)},
      {"n_restarts", std::to_string(c.n_restarts)},
      {"max_iter", std::to_string(c.max_iter)},
      {"tol", format_double(c.tol)},
      {"max_correction_passes", std::to_string(c.max_correction_passes)},
      {"n_neighbors", std::to_string(c.n_neighbors)},
      {"repetitions", std::to_string(c.repetitions)},
      {"warmup", std::to_string(c.warmup)},
      {"standardize", c.standardize ? "true" : "false"},
      {"threads", std::to_string(c.threads)},
  };
}

void apply_config_entry(BenchConfig& c, const std::string& key, const std::string& value) {
  if (key == "k") c.k = std::stoi(value);
  else if (key == "seed") c.seed = std::stoull(value);
  else if (key == "n_restarts") c.n_restarts = std::stoi(value);
  else if (key == "max_iter") c.max_iter = std::stoi(value);
  else if (key == "tol") c.tol = std::stod(value);
  else if (key == "max_correction_passes") c.max_correction_passes = std::stoi(value);
  else if (key == "n_neighbors") c.n_neighbors = std::stoi(value);
  else if (key == "repetitions") c.repetitions = std::stoi(value);
  else if (key == "warmup") c.warmup = std::stoi(value);
  else if (key == "standardize") c.standardize = value == "true";
  else if (key == "threads") c.threads = std::stoi(value);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

constexpr const char* kCsvTables[] = {
    "accuracy", "train_mean_ms", "train_std_ms", "infer_mean_ms", "infer_std_ms", "model_size",
};

double cell_value(const BenchCell& c, const std::string& key) {
  if (key == "accuracy") return c.accuracy;
  if (key == "train_mean_ms") return c.train.mean_ms;
  if (key == "train_std_ms") return c.train.std_ms;
  if (key == "infer_mean_ms") return c.infer.mean_ms;
  if (key == "infer_std_ms") return c.infer.std_ms;
  return static_cast<double>(c.model_size);
}

void set_cell_value(BenchCell& c, const std::string& key, double v) {
  if (key == "accuracy") c.accuracy = v;
  else if (key == "train_mean_ms") c.train.mean_ms = v;
  else if (key == "train_std_ms") c.train.std_ms = v;
  else if (key == "infer_mean_ms") c.infer.mean_ms = v;
  else if (key == "infer_std_ms") c.infer.std_ms = v;
  else if (key == "model_size") c.model_size = static_cast<long>(v);
  else throw Error(ErrorCode::kParse, "unknown report table \"" + key + "\"");
}

std::string emit_markdown(const BenchReport& r) {
  std::ostringstream out;
  out << "# Benchmark report\n\n";
  for (const auto& [k, v] : config_entries(r.config)) out << "- " << k << ": " << v << '\n';

  auto table = [&](const char* title, auto render) {
    out << "\n## " << title << "\n\n|";
    for (const auto& d : r.datasets) out << " | " << d;
    out << " |\n|---|";
    for (std::size_t i = 0; i < r.datasets.size(); ++i) out << "---:|";
    out << '\n';
    for (const auto& a : r.algorithms) {
      out << "| " << a;
      for (const auto& d : r.datasets) {
        const BenchCell* c = r.find(d, a);
        out << " | " << (c == nullptr ? "" : c->error ? "error" : render(*c));
      }
      out << " |\n";
    }
  };
  table("Test accuracies", [](const BenchCell& c) { return fixed(c.accuracy, 3); });
  table("Training times in milliseconds, mean(std)",
        [](const BenchCell& c) { return fixed(c.train.mean_ms, 1) + "(" + fixed(c.train.std_ms, 1) + ")"; });
  table("Inference times in milliseconds, mean(std)",
        [](const BenchCell& c) { return fixed(c.infer.mean_ms, 1) + "(" + fixed(c.infer.std_ms, 1) + ")"; });

  bool header = false;
  for (const auto& c : r.cells) {
    if (!c.error) continue;
    if (!header) out << "\n## Errors\n\n";
    header = true;
    out << "- " << c.dataset << " / " << c.algorithm << ": " << *c.error << '\n';
  }
  return out.str();
}

std::string emit_csv(const BenchReport& r) {
  std::ostringstream out;
  for (const auto& [k, v] : config_entries(r.config)) out << "# " << k << '=' << v << '\n';
  for (const auto& c : r.cells) {
    if (c.error) out << "# error\t" << c.dataset << '\t' << c.algorithm << '\t' << *c.error << '\n';
  }
  out << "table,algorithm";
  for (const auto& d : r.datasets) out << ',' << d;
  out << '\n';
  for (const auto& t : kCsvTables) {
    for (const auto& a : r.algorithms) {
      out << t << ',' << a;
      for (const auto& d : r.datasets) {
        const BenchCell* c = r.find(d, a);
        out << ',';
        if (c != nullptr && !c->error) out << format_double(cell_value(*c, t));
      }
      out << '\n';
    }
  }
  return out.str();
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string emit_report(const BenchReport& report, ReportFormat format) {
  return format == ReportFormat::kMarkdown ? emit_markdown(report) : emit_csv(report);
}

BenchReport parse_report_csv(const std::string& text) {
  BenchReport report;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::map<std::pair<std::string, std::string>, std::string> errors;
  std::map<std::pair<std::string, std::string>, BenchCell> cells;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# error\t", 0) == 0) {
      std::istringstream fields(line.substr(8));
      std::string dataset, algo, message;
      std::getline(fields, dataset, '\t');
      std::getline(fields, algo, '\t');
      std::getline(fields, message);
      errors[{dataset, algo}] = message;
      continue;
    }
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) apply_config_entry(report.config, line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    auto fields = split_commas(line);
    if (!have_header) {
      if (fields.size() < 2 || fields[0] != "table" || fields[1] != "algorithm") {
        throw Error(ErrorCode::kParse, "report header must start with \"table,algorithm\"");
      }
      report.datasets.assign(fields.begin() + 2, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != report.datasets.size() + 2) throw Error(ErrorCode::kParse, "ragged report row: " + line);
    const std::string& table = fields[0];
    const std::string& algo = fields[1];
    if (std::find(report.algorithms.begin(), report.algorithms.end(), algo) == report.algorithms.end()) {
      report.algorithms.push_back(algo);
    }
    for (std::size_t i = 0; i < report.datasets.size(); ++i) {
      const std::string& v = fields[i + 2];
      if (v.empty()) continue;
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
      if (ec != std::errc() || ptr != v.data() + v.size()) throw Error(ErrorCode::kParse, "bad number \"" + v + "\"");
      BenchCell& c = cells[{report.datasets[i], algo}];
      set_cell_value(c, table, x);
    }
  }
  if (!have_header) throw Error(ErrorCode::kParse, "report has no table header");

  for (const auto& d : report.datasets) {
    for (const auto& a : report.algorithms) {
      BenchCell cell;
      if (auto it = cells.find({d, a}); it != cells.end()) {
        cell = it->second;
      } else if (auto e = errors.find({d, a}); e != errors.end()) {
        cell.error = e->second;
      } else {
        continue;
      }
      cell.dataset = d;
      cell.algorithm = a;
      cell.train.repetitions = report.config.repetitions;
      cell.infer.repetitions = report.config.repetitions;
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace superklust
