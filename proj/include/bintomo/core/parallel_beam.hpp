#pragma once

#include "bintomo/core/grid.hpp"
#include "bintomo/core/sparse_operator.hpp"

namespace bintomo {

// Parallel-beam projection matrix, one row per (angle, detector) pair in
// angle-major order. Detectors are centered on the grid: detector i sits at
// offset (i - (count-1)/2) * spacing along the axis perpendicular to the
// rays. At angle 0 rays run along image columns and detector i (with spacing
// equal to the pixel size and count equal to n) sums column i.
//
// Joseph: marches along the dominant ray axis, bilinear interpolation across
// the transverse axis, coefficients scaled by the slab path length.
// Strip: coefficient is the exact pixel/strip overlap area divided by the
// detector spacing; the strip has the detector width and is centered on the
// ray.
//
// Rays that miss the grid keep their (all-zero) rows so detector indexing
// stays dense.
SparseOperator build_parallel_operator(const GridSpec& grid,
                                       const ParallelGeometry& geom);

// Chord length of the ray (angle, detector offset t) through the grid square,
// in length units. Used by tests to check strip row masses.
double ray_grid_chord_length(const GridSpec& grid, double angle, double t);

}  // namespace bintomo
