#pragma once

#include <string>

#include "bintomo/core/image.hpp"

namespace bintomo {

// Binary label images use maxval 1 (0 -> u0, 1 -> u1); ternary maps use
// maxval 2 (0 -> u0, 1 -> undetermined, 2 -> u1). Images up to 64x64 are
// written as ASCII P2, larger ones as binary P5.
void write_pgm(const BinaryImage& img, const std::string& path);
void write_pgm(const TernaryImage& img, const std::string& path);

BinaryImage read_pgm_binary(const std::string& path);
TernaryImage read_pgm_ternary(const std::string& path);

}  // namespace bintomo
