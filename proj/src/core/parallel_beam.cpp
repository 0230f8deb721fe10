#include "bintomo/core/parallel_beam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bintomo {
namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Snap near-axis directions so axis-aligned angles produce exact operators.
void snapped_trig(double angle, double& s, double& c) {
  s = std::sin(angle);
  c = std::cos(angle);
  if (std::abs(s) < 1e-12) {
    s = 0.0;
    c = c < 0.0 ? -1.0 : 1.0;
  } else if (std::abs(c) < 1e-12) {
    c = 0.0;
    s = s < 0.0 ? -1.0 : 1.0;
  }
}

void validate(const GridSpec& grid, const ParallelGeometry& geom) {
  if (grid.n < 1) throw std::invalid_argument("grid requires n >= 1");
  if (grid.pixel_size <= 0.0) {
    throw std::invalid_argument("pixel size must be positive");
  }
  if (geom.angles.empty()) throw std::invalid_argument("no projection angles");
  for (double a : geom.angles) {
    if (!(a >= 0.0 && a < 2.0 * std::numbers::pi)) {
      throw std::invalid_argument("angle outside [0, 2*pi)");
    }
  }
  if (geom.detector_count < 1) {
    throw std::invalid_argument("detector count must be >= 1");
  }
  if (!(geom.detector_spacing > 0.0)) {
    throw std::invalid_argument("detector spacing must be positive");
  }
}

void joseph_row(const GridSpec& grid, double sin_t, double cos_t, double t,
                std::int32_t row, std::vector<Triplet>& entries) {
  const int n = grid.n;
  const double px = grid.pixel_size;
  const double cx = (n - 1) / 2.0;
  const double cy = (n - 1) / 2.0;
  const Vec2 u{sin_t, cos_t};      // ray direction
  const Vec2 w{cos_t, -sin_t};     // detector axis

  auto add = [&](int r, int c, double v) {
    if (r >= 0 && r < n && c >= 0 && c < n && v != 0.0) {
      entries.push_back({row, static_cast<std::int32_t>(r * n + c), v});
    }
  };

  if (std::abs(u.y) >= std::abs(u.x)) {
    const double scale = px / std::abs(u.y);
    for (int rr = 0; rr < n; ++rr) {
      const double yr = (cy - rr) * px;
      const double s = (yr - t * w.y) / u.y;
      const double x = t * w.x + s * u.x;
      const double col_real = x / px + cx;
      const double c0 = std::floor(col_real);
      const double frac = col_real - c0;
      const int c = static_cast<int>(c0);
      add(rr, c, (1.0 - frac) * scale);
      add(rr, c + 1, frac * scale);
    }
  } else {
    const double scale = px / std::abs(u.x);
    for (int cc = 0; cc < n; ++cc) {
      const double xc = (cc - cx) * px;
      const double s = (xc - t * w.x) / u.x;
      const double y = t * w.y + s * u.y;
      const double row_real = cy - y / px;
      const double r0 = std::floor(row_real);
      const double frac = row_real - r0;
      const int r = static_cast<int>(r0);
      add(r, cc, (1.0 - frac) * scale);
      add(r + 1, cc, frac * scale);
    }
  }
}

// Area of the convex polygon `poly` clipped to {p : sgn*(w.p - bound) <= 0}.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 w,
                                 double bound, double sgn) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 2);
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double fa = sgn * (w.x * a.x + w.y * a.y - bound);
    const double fb = sgn * (w.x * b.x + w.y * b.y - bound);
    if (fa <= 0.0) out.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb <= 0.0)) {
      const double alpha = fa / (fa - fb);
      out.push_back({a.x + alpha * (b.x - a.x), a.y + alpha * (b.y - a.y)});
    }
  }
  return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    acc += a.x * b.y - b.x * a.y;
  }
  return std::abs(acc) / 2.0;
}

void strip_row(const GridSpec& grid, double sin_t, double cos_t, double t,
               double spacing, std::int32_t row,
               std::vector<Triplet>& entries) {
  const int n = grid.n;
  const double px = grid.pixel_size;
  const double cx = (n - 1) / 2.0;
  const double cy = (n - 1) / 2.0;
  const Vec2 w{cos_t, -sin_t};
  const double lo = t - spacing / 2.0;
  const double hi = t + spacing / 2.0;
  const double reach = spacing / 2.0 + (px / 2.0) * (std::abs(w.x) + std::abs(w.y));

  for (int rr = 0; rr < n; ++rr) {
    const double yc = (cy - rr) * px;
    for (int cc = 0; cc < n; ++cc) {
      const double xc = (cc - cx) * px;
      const double q = w.x * xc + w.y * yc;
      if (std::abs(q - t) > reach) continue;
      const double hx = px / 2.0;
      std::vector<Vec2> poly = {{xc - hx, yc - hx},
                                {xc + hx, yc - hx},
                                {xc + hx, yc + hx},
                                {xc - hx, yc + hx}};
      poly = clip_halfplane(poly, w, hi, 1.0);
      if (poly.size() < 3) continue;
      poly = clip_halfplane(poly, w, lo, -1.0);
      const double area = polygon_area(poly);
      if (area > 0.0) {
        entries.push_back(
            {row, static_cast<std::int32_t>(rr * n + cc), area / spacing});
      }
    }
  }
}

}  // namespace

SparseOperator build_parallel_operator(const GridSpec& grid,
                                       const ParallelGeometry& geom) {
  validate(grid, geom);

  const std::int32_t rows =
      static_cast<std::int32_t>(geom.angles.size()) * geom.detector_count;
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(rows) * grid.n * 2);

  const double center = (geom.detector_count - 1) / 2.0;
  std::int32_t row = 0;
  for (double angle : geom.angles) {
    double s = 0.0;
    double c = 0.0;
    snapped_trig(angle, s, c);
    for (int di = 0; di < geom.detector_count; ++di, ++row) {
      const double t = (di - center) * geom.detector_spacing;
      if (geom.kernel == ProjectionKernel::Joseph) {
        joseph_row(grid, s, c, t, row, entries);
      } else {
        strip_row(grid, s, c, t, geom.detector_spacing, row, entries);
      }
    }
  }
  return SparseOperator::from_triplets(rows, grid.cells(), std::move(entries));
}

double ray_grid_chord_length(const GridSpec& grid, double angle, double t) {
  double s = 0.0;
  double c = 0.0;
  snapped_trig(angle, s, c);
  const Vec2 u{s, c};
  const Vec2 w{c, -s};
  const double h = grid.n * grid.pixel_size / 2.0;

  // Liang-Barsky clip of p(alpha) = t*w + alpha*u against [-h, h]^2.
  double a_min = -std::numeric_limits<double>::infinity();
  double a_max = std::numeric_limits<double>::infinity();
  const double p0[2] = {t * w.x, t * w.y};
  const double d[2] = {u.x, u.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (p0[axis] < -h || p0[axis] > h) return 0.0;
    } else {
      double a1 = (-h - p0[axis]) / d[axis];
      double a2 = (h - p0[axis]) / d[axis];
      if (a1 > a2) std::swap(a1, a2);
      a_min = std::max(a_min, a1);
      a_max = std::min(a_max, a2);
    }
  }
  return a_max > a_min ? a_max - a_min : 0.0;
}

}  // namespace bintomo
