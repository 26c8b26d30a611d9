#include "superklust/datasets.hpp"

#include <cstdlib>

namespace superklust {

const std::vector<NamedDataset>& benchmark_datasets() {
  static const std::vector<NamedDataset> table = {
      {"optdigits", 3823, 1797, 64, false},
      {"usps", 7291, 2007, 256, true},
      {"satimage", 5144, 1286, 36, false},
      {"letter", 16000, 4000, 16, false},
      {"isolet", 6240, 1557, 617, true},
  };
  return table;
}

const NamedDataset& find_benchmark_dataset(const std::string& name) {
  for (const auto& d : benchmark_datasets()) {
    if (d.name == name) return d;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown dataset \"" + name + "\"");
}

std::filesystem::path resolve_data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("DATA_DIR"); env && *env) return env;
  return "data";
}

namespace {

bool uses_svmlight(const std::string& name) { return name == "usps"; }

std::filesystem::path split_file(const std::string& name, const std::filesystem::path& dir, const char* split) {
  return dir / name / (std::string(split) + (uses_svmlight(name) ? ".svm" : ".csv"));
}

}  // namespace

bool benchmark_dataset_available(const std::string& name, const std::filesystem::path& data_dir) {
  find_benchmark_dataset(name);
  return std::filesystem::exists(split_file(name, data_dir, "train")) &&
         std::filesystem::exists(split_file(name, data_dir, "test"));
}

TrainTest load_benchmark_dataset(const std::string& name, const std::filesystem::path& data_dir) {
  const auto& info = find_benchmark_dataset(name);
  if (!benchmark_dataset_available(name, data_dir)) {
    throw Error(ErrorCode::kIo, "dataset " + name + " not found under " + data_dir.string() +
                                    " (run: superklust fetch --datasets " + name + ")");
  }
  auto load = [&](const char* split) {
    const auto path = split_file(name, data_dir, split);
    Dataset ds = uses_svmlight(name) ? load_svmlight(path, static_cast<int>(info.features))
                                     : load_csv(path, -1, false);
    ds.name = name;
    return ds;
  };
  TrainTest tt{load("train"), load("test")};
  unify_labels(tt.train, tt.test);
  return tt;
}

}  // namespace superklust
