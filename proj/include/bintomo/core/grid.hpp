#pragma once

#include <string_view>
#include <vector>

namespace bintomo {

// Square n-by-n pixel grid; pixels are indexed row-major with the origin in
// the top-left corner.
struct GridSpec {
  int n = 0;
  double pixel_size = 1.0;

  int cells() const { return n * n; }
};

// Lattice directions for discrete line sums. Diagonal groups pixels by
// constant (row + col), Antidiagonal by constant (row - col).
enum class Direction { Horizontal, Vertical, Diagonal, Antidiagonal };

struct LatticeGeometry {
  std::vector<Direction> directions;
};

Direction direction_from_char(char c);
char direction_char(Direction d);
// Parses strings like "hv", "hvd", "hvda".
std::vector<Direction> parse_directions(std::string_view s);

// Lines per direction: n for axis directions, 2n-1 for diagonals.
int lattice_line_count(int n, Direction d);
int lattice_row_count(int n, const LatticeGeometry& geom);

enum class ProjectionKernel { Joseph, Strip };

ProjectionKernel kernel_from_name(std::string_view name);
const char* kernel_name(ProjectionKernel k);

struct ParallelGeometry {
  std::vector<double> angles;  // radians, each in [0, 2*pi)
  int detector_count = 0;
  double detector_spacing = 1.0;
  ProjectionKernel kernel = ProjectionKernel::Joseph;
};

// count angles spread over [0, theta_max], endpoints included (single angle
// sits at 0).
std::vector<double> linspace_angles(double theta_max, int count);

}  // namespace bintomo
