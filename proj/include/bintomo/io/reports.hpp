#pragma once

#include <string>

#include "bintomo/dual/solver_types.hpp"

namespace bintomo {

// Plain-text dual report: objective, kkt_residual and iterations header lines
// followed by the nu values, one per line.
void write_dual_report(const DualSolution& sol, const std::string& path);
DualSolution read_dual_report(const std::string& path);

}  // namespace bintomo
