#pragma once

#include "superklust/common.hpp"

#include <string>
#include <vector>

namespace superklust {

/// Dense feature matrix with contiguous class ids.
///
/// `class_names[c]` is the original label text that was mapped to id `c` at
/// load time; synthetic generators fill it with "0", "1", ...
struct Dataset {
  Matrix X;
  Labels y;
  int n_classes = 0;
  std::string name;
  std::vector<std::string> class_names;

  Eigen::Index size() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }
};

// Checks the Dataset invariants: n >= 1, |y| == n, labels in range, X finite.
void validate(const Dataset& ds);

// Rows of `ds` whose label is `c`.
Matrix rows_of_class(const Dataset& ds, ClassId c);

struct TrainTest {
  Dataset train;
  Dataset test;
};

// Rewrites both datasets onto one label vocabulary (the sorted union of their
// class names) so that ids mean the same class in train and test.
void unify_labels(Dataset& a, Dataset& b);

// Sort key used for label vocabularies: numerically when every label parses
// as a number, lexicographically otherwise.
void sort_label_names(std::vector<std::string>& names);

}  // namespace superklust
