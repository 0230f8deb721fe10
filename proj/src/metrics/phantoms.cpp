#include "bintomo/metrics/phantoms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bintomo {
namespace {

struct Point {
  double x;
  double y;
};

bool in_disk(Point p, double cx, double cy, double r) {
  const double dx = p.x - cx;
  const double dy = p.y - cy;
  return dx * dx + dy * dy <= r * r;
}

bool in_rect(Point p, double cx, double cy, double hx, double hy) {
  return std::abs(p.x - cx) <= hx && std::abs(p.y - cy) <= hy;
}

// Wheel: large disk with three round holes.
bool phantom_p1(Point p) {
  if (!in_disk(p, 0.0, 0.0, 0.42)) return false;
  for (int k = 0; k < 3; ++k) {
    const double ang = (0.25 + k / 3.0) * 2.0 * 3.14159265358979323846;
    if (in_disk(p, 0.22 * std::cos(ang), 0.22 * std::sin(ang), 0.09)) {
      return false;
    }
  }
  return true;
}

// Rectangular frame with an off-center plug.
bool phantom_p2(Point p) {
  const bool frame = in_rect(p, 0.0, 0.0, 0.42, 0.42) &&
                     !in_rect(p, 0.0, 0.0, 0.28, 0.28);
  return frame || in_disk(p, 0.08, -0.06, 0.13);
}

// Scattered blobs.
bool phantom_p3(Point p) {
  return in_disk(p, -0.2, -0.2, 0.16) || in_disk(p, 0.22, -0.15, 0.13) ||
         in_disk(p, 0.02, 0.24, 0.11) || in_disk(p, -0.28, 0.18, 0.08);
}

// Small centered disk (the easy case).
bool phantom_p4(Point p) { return in_disk(p, 0.0, 0.0, 0.22); }

bool phantom_disk(Point p) { return in_disk(p, 0.0, 0.0, 0.4); }

bool phantom_rings(Point p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y);
  return (r >= 0.30 && r <= 0.42) || (r >= 0.10 && r <= 0.20);
}

bool phantom_letters(Point p) {
  // Block C on the left half
  const bool c_bar = in_rect(p, -0.30, 0.0, 0.06, 0.22);
  const bool c_top = in_rect(p, -0.18, 0.19, 0.14, 0.05);
  const bool c_bot = in_rect(p, -0.18, -0.19, 0.14, 0.05);
  // Block T on the right half
  const bool t_top = in_rect(p, 0.22, 0.19, 0.17, 0.05);
  const bool t_stem = in_rect(p, 0.22, -0.03, 0.06, 0.19);
  return c_bar || c_top || c_bot || t_top || t_stem;
}

}  // namespace

PhantomName phantom_from_name(std::string_view name) {
  if (name == "P1" || name == "p1") return PhantomName::P1;
  if (name == "P2" || name == "p2") return PhantomName::P2;
  if (name == "P3" || name == "p3") return PhantomName::P3;
  if (name == "P4" || name == "p4") return PhantomName::P4;
  if (name == "disk") return PhantomName::Disk;
  if (name == "rings") return PhantomName::Rings;
  if (name == "letters") return PhantomName::Letters;
  throw std::invalid_argument("unknown phantom: " + std::string(name));
}

const char* phantom_name(PhantomName p) {
  switch (p) {
    case PhantomName::P1:
      return "P1";
    case PhantomName::P2:
      return "P2";
    case PhantomName::P3:
      return "P3";
    case PhantomName::P4:
      return "P4";
    case PhantomName::Disk:
      return "disk";
    case PhantomName::Rings:
      return "rings";
    case PhantomName::Letters:
      return "letters";
  }
  return "?";
}

std::vector<PhantomName> all_phantoms() {
  return {PhantomName::P1,   PhantomName::P2,    PhantomName::P3,
          PhantomName::P4,   PhantomName::Disk,  PhantomName::Rings,
          PhantomName::Letters};
}

BinaryImage make_phantom(PhantomName name, int n) {
  if (n < 8) throw std::invalid_argument("phantoms require n >= 8");
  BinaryImage img;
  img.n = n;
  img.labels.resize(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      // pixel center in [-0.5, 0.5]^2, y up
      const Point p{(c + 0.5) / n - 0.5, 0.5 - (r + 0.5) / n};
      bool inside = false;
      switch (name) {
        case PhantomName::P1:
          inside = phantom_p1(p);
          break;
        case PhantomName::P2:
          inside = phantom_p2(p);
          break;
        case PhantomName::P3:
          inside = phantom_p3(p);
          break;
        case PhantomName::P4:
          inside = phantom_p4(p);
          break;
        case PhantomName::Disk:
          inside = phantom_disk(p);
          break;
        case PhantomName::Rings:
          inside = phantom_rings(p);
          break;
        case PhantomName::Letters:
          inside = phantom_letters(p);
          break;
      }
      img.labels[static_cast<std::size_t>(r) * n + c] = inside ? 1 : 0;
    }
  }
  return img;
}

}  // namespace bintomo
