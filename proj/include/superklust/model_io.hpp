#pragma once

#include "superklust/tessellation.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace superklust {

inline constexpr int kModelFormatVersion = 1;

// JSON model document:
//   { "version": 1, "d": int, "n_classes": int, "k": int,
//     "correction_iterations": int, "class_names": [string...],
//     "generators": [ { "point": [float...], "label": int, "source_class": int } ... ] }
// Generator order is significant (tie-breaking). Doubles are written in the
// shortest form that parses back to the same bits. "correction_iterations",
// "class_names" and "source_class" are optional on read (defaults 0, empty and
// the generator label).
//
// Errors: kMalformed for unparseable or structurally wrong documents,
// kVersionMismatch for an unknown version, kNonFinite for null/inf numbers.
std::string save_model(const Model& model);
Model load_model(std::string_view document);

void save_model_file(const Model& model, const std::filesystem::path& path);
Model load_model_file(const std::filesystem::path& path);

}  // namespace superklust
