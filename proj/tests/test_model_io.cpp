#include "superklust/datasets.hpp"
#include "superklust/model_io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>

using namespace superklust;

namespace {

Model awkward_model() {
  Model m;
  m.d = 3;
  m.n_classes = 3;
  m.k = 2;
  m.correction_iterations = 2;
  m.class_names = {"a", "b", "c"};
  const double values[][3] = {{0.1, -1e-300, 1.0 / 3.0},
                              {std::nextafter(1.0, 2.0), 123456789.123456789, -0.0},
                              {5e-324, 1.7976931348623157e308, -2.5}};
  for (int i = 0; i < 3; ++i) {
    Generator g;
    g.point = Eigen::Map<const RowVector>(values[i], 3);
    g.label = static_cast<ClassId>(2 - i);
    g.source_class = static_cast<ClassId>(i);
    m.generators.push_back(g);
  }
  return m;
}

bool bits_equal(const RowVector& a, const RowVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (std::memcmp(&a[j], &b[j], sizeof(double)) != 0) return false;
  }
  return true;
}

ErrorCode code_of(const std::string& doc) {
  try {
    load_model(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected error for: " << doc);
  return ErrorCode::kInvalidArgument;
}

const char* kMinimal = R"({"version": 1, "d": 2, "n_classes": 2, "k": 1,
  "generators": [{"point": [0, 0], "label": 0}, {"point": [1, 1], "label": 1}]})";

}  // namespace

TEST_CASE("round trip is bit-exact") {
  const Model m = awkward_model();
  const Model back = load_model(save_model(m));
  CHECK(back == m);
  for (std::size_t i = 0; i < m.generators.size(); ++i) {
    CHECK(bits_equal(back.generators[i].point, m.generators[i].point));
  }
  CHECK(save_model(back) == save_model(m));
}

TEST_CASE("round trip of a fitted model predicts identically") {
  const Dataset train = make_moons(300, 0.2, 4);
  FitConfig cfg;
  cfg.kmeans.k = 7;
  const Model m = fit(train, cfg);
  const Model back = load_model(save_model(m));
  std::mt19937_64 gen(5);
  const Matrix X = oracle::random_matrix(gen, 2000, 2, -2, 3);
  CHECK(predict(to_discriminants(back), X) == predict(to_discriminants(m), X));
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "superklust_model_io_test.json";
  save_model_file(awkward_model(), path);
  CHECK(load_model_file(path) == awkward_model());
  std::filesystem::remove(path);
  try {
    load_model_file(path);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("optional fields take defaults") {
  const Model m = load_model(kMinimal);
  CHECK(m.generators.size() == 2);
  CHECK(m.correction_iterations == 0);
  CHECK(m.class_names.empty());
  CHECK(m.generators[1].source_class == 1);
}

TEST_CASE("truncated document is malformed") {
  const std::string full = save_model(awkward_model());
  for (std::size_t len : {std::size_t{0}, std::size_t{1}, full.size() / 2, full.size() - 3}) {
    CHECK(code_of(full.substr(0, len)) == ErrorCode::kMalformed);
  }
}

TEST_CASE("structural errors are malformed") {
  CHECK(code_of("[]") == ErrorCode::kMalformed);
  CHECK(code_of(R"({"version": 1, "d": 2, "n_classes": 1, "k": 1})") == ErrorCode::kMalformed);
  CHECK(code_of(R"({"version": 1, "d": 2, "n_classes": 1, "k": 1, "generators": [{"point": [0], "label": 0}]})") ==
        ErrorCode::kMalformed);
  CHECK(code_of(R"({"version": 1, "d": 2, "n_classes": 1, "k": 1, "generators": [{"point": [0, 0], "label": 4}]})") ==
        ErrorCode::kMalformed);
  CHECK(code_of(R"({"version": 1, "d": 2, "n_classes": 1, "k": 1, "generators": [{"point": [0, "x"], "label": 0}]})") ==
        ErrorCode::kMalformed);
  CHECK(code_of(R"({"version": "1", "d": 2, "n_classes": 1, "k": 1, "generators": []})") == ErrorCode::kMalformed);
}

TEST_CASE("unknown version") {
  CHECK(code_of(R"({"version": 2, "d": 2, "n_classes": 1, "k": 1, "generators": []})") ==
        ErrorCode::kVersionMismatch);
}

TEST_CASE("null and overflowing numbers are non-finite") {
  CHECK(code_of(R"({"version": 1, "d": 2, "n_classes": 1, "k": 1, "generators": [{"point": [0, null], "label": 0}]})") ==
        ErrorCode::kNonFinite);
  CHECK(code_of(R"({"version": 1, "d": 2, "n_classes": 1, "k": 1, "generators": [{"point": [1e999, 0], "label": 0}]})") ==
        ErrorCode::kNonFinite);
}

TEST_CASE("saving an invalid model throws") {
  Model m = awkward_model();
  m.generators[0].point[1] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(save_model(m), Error);
}
