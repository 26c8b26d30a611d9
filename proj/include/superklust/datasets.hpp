#pragma once

#include "superklust/dataset.hpp"
#include "superklust/tessellation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace superklust {

// ---------------------------------------------------------------------------
// Synthetic generators. Rows come out class by class (all class 0, then
// class 1, ...); noise is drawn row by row, coordinate by coordinate.

/// Two interleaving half circles. Class 0 at (cos t, sin t), class 1 at
/// (1 - cos t, 0.5 - sin t), t evenly spaced over [0, pi] inclusive, plus
/// isotropic Gaussian noise of standard deviation `noise`.
Dataset make_moons(int n, double noise, std::uint64_t seed);

/// Outer unit circle (class 0) and inner circle of radius `factor` (class 1),
/// angles evenly spaced over [0, 2 pi).
Dataset make_circles(int n, double factor, double noise, std::uint64_t seed);

/// `n_per_class` isotropic Gaussian samples around each row of `centers`.
Dataset make_gaussian_blobs(int n_per_class, const Matrix& centers, double sigma, std::uint64_t seed);

// ---------------------------------------------------------------------------
// File loaders. Labels are mapped to contiguous ids in ascending order of the
// original values (numeric order when all labels are numbers); the original
// values are kept in Dataset::class_names.

// Column index (negative counts from the end, -1 is the last column), a
// header name, or NoLabel for unlabeled feature files (every row gets class 0).
struct NoLabel {};
using LabelColumn = std::variant<int, std::string, NoLabel>;

Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label_column, bool has_header);
Dataset parse_csv(std::istream& in, const LabelColumn& label_column, bool has_header,
                  const std::string& name = "csv");

/// "label idx:val idx:val ..." with 1-based indices; absent indices are zero.
/// Blank lines and '#' comments are skipped.
Dataset load_svmlight(const std::filesystem::path& path, int n_features);
Dataset parse_svmlight(std::istream& in, int n_features, const std::string& name = "svmlight");

// Writes features then the original label text, with a header row
// "x0,...,x{d-1},label". Numbers use the shortest round-trip form.
void write_csv(const Dataset& ds, std::ostream& out);
void write_csv(const Dataset& ds, const std::filesystem::path& path);

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

// ---------------------------------------------------------------------------
// Standardization fitted on training data.

struct ScalerParams {
  RowVector mean;
  RowVector scale;  // strictly positive; 1 for zero-variance features
};

// Per-feature mean and population standard deviation.
ScalerParams standardize_fit(const Dataset& train);
Dataset standardize_apply(const ScalerParams& params, const Dataset& ds);
Matrix standardize_invert(const ScalerParams& params, const Matrix& X);

// ---------------------------------------------------------------------------
// Decision-boundary export.

struct GridPoint {
  double x = 0.0;
  double y = 0.0;
  ClassId label = 0;
};

/// resolution^2 points over the inclusive linspace of both ranges. Row-major
/// with y as the outer index: point (iy, ix) sits at position iy * resolution + ix.
std::vector<GridPoint> decision_grid(const DiscriminantBank& bank, std::pair<double, double> x_range,
                                     std::pair<double, double> y_range, int resolution);

// CSV with header "x,y,label".
void write_grid_csv(const std::vector<GridPoint>& grid, std::ostream& out);

// ---------------------------------------------------------------------------
// Benchmark datasets as laid out on disk by the fetch script.

struct NamedDataset {
  std::string name;
  // Sizes of the reference train/test split and the feature count.
  Eigen::Index train_rows;
  Eigen::Index test_rows;
  Eigen::Index features;
  bool opt_in;  // large downloads, excluded from default suites
};

const std::vector<NamedDataset>& benchmark_datasets();
const NamedDataset& find_benchmark_dataset(const std::string& name);

// `flag` if non-empty, else $DATA_DIR, else "data".
std::filesystem::path resolve_data_dir(const std::string& flag);

bool benchmark_dataset_available(const std::string& name, const std::filesystem::path& data_dir);

/// Loads <data_dir>/<name>/train.csv and test.csv (features then label, no
/// header), or train.svm/test.svm for usps, with a shared label vocabulary.
TrainTest load_benchmark_dataset(const std::string& name, const std::filesystem::path& data_dir);

}  // namespace superklust
