#pragma once

#include "bintomo/core/grid.hpp"
#include "bintomo/core/sparse_operator.hpp"

namespace bintomo {

// One row per discrete line per direction, rows grouped by direction in the
// order given by the geometry, lines ordered by their index. All coefficients
// are exactly 1.
SparseOperator build_lattice_operator(const GridSpec& grid,
                                      const LatticeGeometry& geom);

// Line index of a pixel for one direction (h: row, v: col, d: row+col,
// a: row-col shifted to start at 0).
int lattice_line_index(int n, Direction d, int row, int col);

}  // namespace bintomo
