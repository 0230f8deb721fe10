#include "bintomo/core/grid.hpp"

#include <stdexcept>
#include <string>

namespace bintomo {

Direction direction_from_char(char c) {
  switch (c) {
    case 'h':
      return Direction::Horizontal;
    case 'v':
      return Direction::Vertical;
    case 'd':
      return Direction::Diagonal;
    case 'a':
      return Direction::Antidiagonal;
    default:
      throw std::invalid_argument(std::string("unknown lattice direction '") +
                                  c + "' (expected h, v, d or a)");
  }
}

char direction_char(Direction d) {
  switch (d) {
    case Direction::Horizontal:
      return 'h';
    case Direction::Vertical:
      return 'v';
    case Direction::Diagonal:
      return 'd';
    case Direction::Antidiagonal:
      return 'a';
  }
  return '?';
}

std::vector<Direction> parse_directions(std::string_view s) {
  std::vector<Direction> dirs;
  dirs.reserve(s.size());
  for (char c : s) dirs.push_back(direction_from_char(c));
  return dirs;
}

int lattice_line_count(int n, Direction d) {
  switch (d) {
    case Direction::Horizontal:
    case Direction::Vertical:
      return n;
    case Direction::Diagonal:
    case Direction::Antidiagonal:
      return 2 * n - 1;
  }
  return 0;
}

int lattice_row_count(int n, const LatticeGeometry& geom) {
  int rows = 0;
  for (Direction d : geom.directions) rows += lattice_line_count(n, d);
  return rows;
}

ProjectionKernel kernel_from_name(std::string_view name) {
  if (name == "joseph") return ProjectionKernel::Joseph;
  if (name == "strip") return ProjectionKernel::Strip;
  throw std::invalid_argument("unknown projection kernel: " + std::string(name));
}

const char* kernel_name(ProjectionKernel k) {
  return k == ProjectionKernel::Joseph ? "joseph" : "strip";
}

std::vector<double> linspace_angles(double theta_max, int count) {
  if (count < 1) throw std::invalid_argument("angle count must be >= 1");
  std::vector<double> angles(count);
  if (count == 1) {
    angles[0] = 0.0;
    return angles;
  }
  for (int k = 0; k < count; ++k) {
    angles[k] = theta_max * static_cast<double>(k) / (count - 1);
  }
  return angles;
}

}  // namespace bintomo
