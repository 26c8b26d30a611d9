#include "superklust/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

namespace superklust {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "io error";
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kVersionMismatch: return "version mismatch";
  }
  return "unknown";
}

void require_finite(const Matrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!m.row(i).allFinite()) {
      throw Error(ErrorCode::kNonFinite,
                  std::string("non-finite feature in ") + what + " row " + std::to_string(i));
    }
  }
}

void validate(const Dataset& ds) {
  if (ds.X.rows() == 0) throw Error(ErrorCode::kEmptyInput, "empty input");
  if (static_cast<Eigen::Index>(ds.y.size()) != ds.X.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "label count does not match row count");
  }
  if (ds.n_classes < 1) throw Error(ErrorCode::kInvalidArgument, "n_classes must be positive");
  for (std::size_t i = 0; i < ds.y.size(); ++i) {
    if (ds.y[i] < 0 || ds.y[i] >= ds.n_classes) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label out of range at row " + std::to_string(i));
    }
  }
  require_finite(ds.X, "dataset");
}

Matrix rows_of_class(const Dataset& ds, ClassId c) {
  const auto count = std::count(ds.y.begin(), ds.y.end(), c);
  Matrix out(count, ds.X.cols());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < ds.X.rows(); ++i) {
    if (ds.y[static_cast<std::size_t>(i)] == c) out.row(r++) = ds.X.row(i);
  }
  return out;
}

namespace {

bool parse_number(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

void sort_label_names(std::vector<std::string>& names) {
  std::vector<double> values(names.size());
  bool numeric = true;
  for (std::size_t i = 0; i < names.size() && numeric; ++i) {
    numeric = parse_number(names[i], values[i]);
  }
  if (numeric) {
    std::vector<std::size_t> order(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (values[a] != values[b]) return values[a] < values[b];
      return names[a] < names[b];
    });
    std::vector<std::string> sorted;
    sorted.reserve(names.size());
    for (auto i : order) sorted.push_back(names[i]);
    names = std::move(sorted);
  } else {
    std::sort(names.begin(), names.end());
  }
}

void unify_labels(Dataset& a, Dataset& b) {
  std::vector<std::string> vocab = a.class_names;
  for (const auto& n : b.class_names) {
    if (std::find(vocab.begin(), vocab.end(), n) == vocab.end()) vocab.push_back(n);
  }
  sort_label_names(vocab);
  std::map<std::string, ClassId> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) index[vocab[i]] = static_cast<ClassId>(i);

  for (Dataset* ds : {&a, &b}) {
    for (auto& label : ds->y) label = index.at(ds->class_names.at(static_cast<std::size_t>(label)));
    ds->class_names = vocab;
    ds->n_classes = static_cast<int>(vocab.size());
  }
}

}  // namespace superklust
