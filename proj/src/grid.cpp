#include "superklust/datasets.hpp"

#include <ostream>

namespace superklust {

namespace {

double lerp(std::pair<double, double> range, int i, int resolution) {
  if (i == resolution - 1) return range.second;
  return range.first + (range.second - range.first) * i / (resolution - 1);
}

}  // namespace

std::vector<GridPoint> decision_grid(const DiscriminantBank& bank, std::pair<double, double> x_range,
                                     std::pair<double, double> y_range, int resolution) {
  if (bank.dim() != 2) throw Error(ErrorCode::kDimensionMismatch, "grid export requires 2-D models");
  if (!(x_range.first < x_range.second) || !(y_range.first < y_range.second)) {
    throw Error(ErrorCode::kInvalidArgument, "grid ranges need lo < hi");
  }
  if (resolution < 2) throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 2");

  const auto count = static_cast<Eigen::Index>(resolution) * resolution;
  Matrix points(count, 2);
  for (int iy = 0; iy < resolution; ++iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const Eigen::Index r = static_cast<Eigen::Index>(iy) * resolution + ix;
      points(r, 0) = lerp(x_range, ix, resolution);
      points(r, 1) = lerp(y_range, iy, resolution);
    }
  }
  const Labels labels = predict(bank, points);
  std::vector<GridPoint> grid(static_cast<std::size_t>(count));
  for (Eigen::Index r = 0; r < count; ++r) {
    grid[static_cast<std::size_t>(r)] = {points(r, 0), points(r, 1), labels[static_cast<std::size_t>(r)]};
  }
  return grid;
}

void write_grid_csv(const std::vector<GridPoint>& grid, std::ostream& out) {
  out << "x,y,label\n";
  for (const auto& p : grid) out << format_double(p.x) << ',' << format_double(p.y) << ',' << p.label << '\n';
}

}  // namespace superklust
