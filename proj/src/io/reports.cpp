#include "bintomo/io/reports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bintomo {

void write_dual_report(const DualSolution& sol, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "objective %.17g\n", sol.objective);
  f << buf;
  std::snprintf(buf, sizeof(buf), "kkt_residual %.17g\n", sol.kkt_residual);
  f << buf;
  f << "iterations " << sol.iterations << '\n';
  for (double v : sol.nu) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    f << buf;
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

DualSolution read_dual_report(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open report: " + path);
  DualSolution sol;
  std::string key;
  if (!(f >> key >> sol.objective) || key != "objective") {
    throw std::runtime_error("bad dual report header: " + path);
  }
  if (!(f >> key >> sol.kkt_residual) || key != "kkt_residual") {
    throw std::runtime_error("bad dual report header: " + path);
  }
  if (!(f >> key >> sol.iterations) || key != "iterations") {
    throw std::runtime_error("bad dual report header: " + path);
  }
  double v = 0.0;
  while (f >> v) sol.nu.push_back(v);
  return sol;
}

}  // namespace bintomo
