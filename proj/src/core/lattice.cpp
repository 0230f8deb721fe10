#include "bintomo/core/lattice.hpp"

#include <set>
#include <stdexcept>

namespace bintomo {

int lattice_line_index(int n, Direction d, int row, int col) {
  switch (d) {
    case Direction::Horizontal:
      return row;
    case Direction::Vertical:
      return col;
    case Direction::Diagonal:
      return row + col;
    case Direction::Antidiagonal:
      return row - col + (n - 1);
  }
  return -1;
}

SparseOperator build_lattice_operator(const GridSpec& grid,
                                      const LatticeGeometry& geom) {
  if (grid.n < 1) throw std::invalid_argument("grid requires n >= 1");
  if (geom.directions.empty()) {
    throw std::invalid_argument("lattice geometry requires directions");
  }
  std::set<Direction> seen(geom.directions.begin(), geom.directions.end());
  if (seen.size() != geom.directions.size()) {
    throw std::invalid_argument("duplicate lattice direction");
  }

  const int n = grid.n;
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(geom.directions.size()) * n * n);

  std::int32_t row_offset = 0;
  for (Direction d : geom.directions) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        entries.push_back({row_offset + lattice_line_index(n, d, r, c),
                           static_cast<std::int32_t>(r * n + c), 1.0});
      }
    }
    row_offset += lattice_line_count(n, d);
  }
  return SparseOperator::from_triplets(row_offset, n * n, std::move(entries));
}

}  // namespace bintomo
