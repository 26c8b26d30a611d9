#include "superklust/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>

namespace superklust {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, long& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Maps raw label strings to contiguous ids and fills the Dataset label fields.
void encode_labels(const std::vector<std::string>& raw, Dataset& ds) {
  std::vector<std::string> vocab = raw;
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  sort_label_names(vocab);
  std::map<std::string, ClassId> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) index[vocab[i]] = static_cast<ClassId>(i);
  ds.y.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) ds.y[i] = index.at(raw[i]);
  ds.class_names = std::move(vocab);
  ds.n_classes = static_cast<int>(ds.class_names.size());
}

Matrix to_matrix(const std::vector<double>& values, std::size_t rows, std::size_t cols) {
  Matrix X(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::copy(values.begin(), values.end(), X.data());
  return X;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

}  // namespace

Dataset parse_csv(std::istream& in, const LabelColumn& label_column, bool has_header, const std::string& name) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  std::size_t label_idx = 0;
  bool resolved = false;

  const bool unlabeled = std::holds_alternative<NoLabel>(label_column);
  auto resolve_index = [&](std::size_t cols) {
    width = cols;
    label_idx = unlabeled ? cols : 0;
    if (const int* idx = std::get_if<int>(&label_column)) {
      const long i = *idx < 0 ? static_cast<long>(cols) + *idx : *idx;
      if (i < 0 || i >= static_cast<long>(cols)) {
        throw Error(ErrorCode::kParse, "label column " + std::to_string(*idx) + " out of range for " +
                                           std::to_string(cols) + " columns");
      }
      label_idx = static_cast<std::size_t>(i);
    }
    resolved = true;
  };

  if (has_header) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!trim(line).empty()) break;
    }
    const auto header = split(line, ',');
    resolve_index(header.size());
    if (const auto* col = std::get_if<std::string>(&label_column)) {
      const auto it = std::find(header.begin(), header.end(), *col);
      if (it == header.end()) throw Error(ErrorCode::kParse, "label column \"" + *col + "\" not in header");
      label_idx = static_cast<std::size_t>(it - header.begin());
    }
  } else if (std::holds_alternative<std::string>(label_column)) {
    throw Error(ErrorCode::kInvalidArgument, "a named label column requires a header row");
  }

  std::vector<double> values;
  std::vector<std::string> raw_labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (!resolved) resolve_index(cells.size());
    if (cells.size() != width) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                         " columns, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_idx) {
        if (cells[c].empty()) throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": empty label");
        raw_labels.emplace_back(cells[c]);
        continue;
      }
      if (unlabeled && c == 0) raw_labels.emplace_back();
      double v = 0.0;
      if (!parse_double(cells[c], v)) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                           ": cannot parse \"" + std::string(cells[c]) + "\" as a number");
      }
      values.push_back(v);
    }
  }
  if (raw_labels.empty()) throw Error(ErrorCode::kEmptyInput, "empty input: no data rows");
  const std::size_t features = unlabeled ? width : width - 1;
  if (features < 1) throw Error(ErrorCode::kParse, "need at least one feature column besides the label");

  Dataset ds;
  ds.name = name;
  ds.X = to_matrix(values, raw_labels.size(), features);
  encode_labels(raw_labels, ds);
  validate(ds);
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label_column, bool has_header) {
  auto in = open_input(path);
  return parse_csv(in, label_column, has_header, path.stem().string());
}

Dataset parse_svmlight(std::istream& in, int n_features, const std::string& name) {
  if (n_features < 1) throw Error(ErrorCode::kInvalidArgument, "n_features must be >= 1");
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  std::vector<std::string> raw_labels;
  const auto width = static_cast<std::size_t>(n_features);

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;

    auto fail = [&](const std::string& what) -> Error {
      return Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + what);
    };

    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < body.size()) {
      const auto start = body.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      const auto end = body.find_first_of(" \t", start);
      tokens.push_back(body.substr(start, end == std::string_view::npos ? end : end - start));
      pos = end == std::string_view::npos ? body.size() : end;
    }

    raw_labels.emplace_back(tokens.front());
    const std::size_t base = values.size();
    values.resize(base + width, 0.0);
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) throw fail("malformed token \"" + std::string(tok) + "\"");
      const auto key = tok.substr(0, colon);
      if (key == "qid") continue;
      long idx = 0;
      double v = 0.0;
      if (!parse_int(key, idx) || !parse_double(tok.substr(colon + 1), v)) {
        throw fail("malformed token \"" + std::string(tok) + "\"");
      }
      if (idx < 1 || idx > n_features) {
        throw fail("feature index " + std::to_string(idx) + " outside [1, " + std::to_string(n_features) + "]");
      }
      values[base + static_cast<std::size_t>(idx - 1)] = v;
    }
  }
  if (raw_labels.empty()) throw Error(ErrorCode::kEmptyInput, "empty input: no data rows");

  Dataset ds;
  ds.name = name;
  ds.X = to_matrix(values, raw_labels.size(), width);
  encode_labels(raw_labels, ds);
  validate(ds);
  return ds;
}

Dataset load_svmlight(const std::filesystem::path& path, int n_features) {
  auto in = open_input(path);
  return parse_svmlight(in, n_features, path.stem().string());
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_csv(const Dataset& ds, std::ostream& out) {
  for (Eigen::Index j = 0; j < ds.dim(); ++j) out << 'x' << j << ',';
  out << "label\n";
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    for (Eigen::Index j = 0; j < ds.dim(); ++j) out << format_double(ds.X(i, j)) << ',';
    const auto label = static_cast<std::size_t>(ds.y[static_cast<std::size_t>(i)]);
    out << (label < ds.class_names.size() ? ds.class_names[label] : std::to_string(label)) << '\n';
  }
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  write_csv(ds, out);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace superklust
