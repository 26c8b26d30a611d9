#include "superklust/model_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace superklust {

using nlohmann::json;

std::string save_model(const Model& model) {
  model.validate();
  json doc;
  doc["version"] = kModelFormatVersion;
  doc["d"] = model.d;
  doc["n_classes"] = model.n_classes;
  doc["k"] = model.k;
  doc["correction_iterations"] = model.correction_iterations;
  if (!model.class_names.empty()) doc["class_names"] = model.class_names;
  json gens = json::array();
  for (const auto& g : model.generators) {
    json point = json::array();
    for (Eigen::Index j = 0; j < g.point.size(); ++j) point.push_back(g.point[j]);
    gens.push_back({{"point", std::move(point)}, {"label", g.label}, {"source_class", g.source_class}});
  }
  doc["generators"] = std::move(gens);
  return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformed, "malformed model: " + what);
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing \"") + key + "\"");
  return *it;
}

int int_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) malformed(std::string("\"") + key + "\" is not an integer");
  return v.get<int>();
}

double number(const json& v, const std::string& where) {
  if (v.is_null()) throw Error(ErrorCode::kNonFinite, "non-finite value at " + where);
  if (!v.is_number()) malformed(where + " is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::kNonFinite, "non-finite value at " + where);
  return x;
}

}  // namespace

Model load_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    malformed(e.what());
  } catch (const json::out_of_range& e) {
    // numeric literal overflows a double
    throw Error(ErrorCode::kNonFinite, std::string("non-finite value: ") + e.what());
  }
  if (!doc.is_object()) malformed("top level is not an object");

  const int version = int_field(doc, "version");
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "unsupported model version " + std::to_string(version));
  }

  Model model;
  model.d = int_field(doc, "d");
  model.n_classes = int_field(doc, "n_classes");
  model.k = int_field(doc, "k");
  if (doc.contains("correction_iterations")) {
    model.correction_iterations = int_field(doc, "correction_iterations");
  }
  if (doc.contains("class_names")) {
    const json& names = doc["class_names"];
    if (!names.is_array()) malformed("\"class_names\" is not an array");
    for (const auto& n : names) {
      if (!n.is_string()) malformed("\"class_names\" entries must be strings");
      model.class_names.push_back(n.get<std::string>());
    }
  }
  if (model.d < 1) malformed("\"d\" must be positive");

  const json& gens = field(doc, "generators");
  if (!gens.is_array()) malformed("\"generators\" is not an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const json& g = gens[i];
    const std::string where = "generators[" + std::to_string(i) + "]";
    if (!g.is_object()) malformed(where + " is not an object");
    const json& point = field(g, "point");
    if (!point.is_array()) malformed(where + ".point is not an array");
    if (point.size() != static_cast<std::size_t>(model.d)) malformed(where + ".point has wrong length");
    Generator gen;
    gen.point.resize(model.d);
    for (std::size_t j = 0; j < point.size(); ++j) {
      gen.point[static_cast<Eigen::Index>(j)] = number(point[j], where + ".point[" + std::to_string(j) + "]");
    }
    gen.label = int_field(g, "label");
    gen.source_class = g.contains("source_class") ? int_field(g, "source_class") : gen.label;
    model.generators.push_back(std::move(gen));
  }

  try {
    model.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNonFinite) throw;
    malformed(e.what());
  }
  return model;
}

void save_model_file(const Model& model, const std::filesystem::path& path) {
  const std::string text = save_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

Model load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace superklust
