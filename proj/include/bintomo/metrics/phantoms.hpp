#pragma once

#include <string_view>
#include <vector>

#include "bintomo/core/image.hpp"

namespace bintomo {

// Analytic, resolution-parametric binary phantoms. P1-P4 are synthetic test
// objects of decreasing difficulty; disk/rings/letters are simple geometric
// stand-alones (rings and letters are deliberately not h,v,d-convex).
enum class PhantomName { P1, P2, P3, P4, Disk, Rings, Letters };

PhantomName phantom_from_name(std::string_view name);
const char* phantom_name(PhantomName p);
std::vector<PhantomName> all_phantoms();

// Deterministic for a given (name, n); requires n >= 8.
BinaryImage make_phantom(PhantomName name, int n);

}  // namespace bintomo
