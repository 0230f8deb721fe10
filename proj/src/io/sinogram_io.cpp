#include "bintomo/io/sinogram_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bintomo {
namespace {

void write_weights_file(const std::string& path,
                        std::span<const double> weights) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  char buf[40];
  for (double w : weights) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", w);
    f << buf;
  }
}

std::vector<double> read_weights_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open weights file: " + path);
  std::vector<double> w;
  double v = 0.0;
  while (f >> v) w.push_back(v);
  return w;
}

}  // namespace

void write_sinogram(const std::string& csv_path, int angle_count,
                    int detector_count, std::span<const double> values,
                    const std::map<std::string, std::string>& metadata,
                    std::span<const double> weights) {
  if (values.size() != static_cast<std::size_t>(angle_count) *
                           static_cast<std::size_t>(detector_count)) {
    throw std::invalid_argument("sinogram shape mismatch");
  }
  std::ofstream f(csv_path);
  if (!f) throw std::runtime_error("cannot open for writing: " + csv_path);
  f << "angle_index,detector_index,value\n";
  char buf[64];
  for (int a = 0; a < angle_count; ++a) {
    for (int d = 0; d < detector_count; ++d) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", a, d,
                    values[static_cast<std::size_t>(a) * detector_count + d]);
      f << buf;
    }
  }
  if (!f) throw std::runtime_error("write failed: " + csv_path);

  std::map<std::string, std::string> meta = metadata;
  meta["angle_count"] = std::to_string(angle_count);
  meta["detector_count"] = std::to_string(detector_count);
  if (!weights.empty()) {
    const std::string wpath = csv_path + ".weights";
    write_weights_file(wpath, weights);
    meta["weights_file"] = wpath;
  }
  std::ofstream mf(csv_path + ".meta");
  if (!mf) throw std::runtime_error("cannot open for writing: " + csv_path + ".meta");
  for (const auto& [k, v] : meta) mf << k << '=' << v << '\n';
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

SinogramFile read_sinogram(const std::string& csv_path) {
  std::ifstream f(csv_path);
  if (!f) throw std::runtime_error("cannot open sinogram: " + csv_path);
  SinogramFile sf;
  std::string line;
  if (!std::getline(f, line) || line.rfind("angle_index", 0) != 0) {
    throw std::runtime_error("bad sinogram header in " + csv_path);
  }
  struct Row {
    int a;
    int d;
    double v;
  };
  std::vector<Row> rows;
  int max_a = -1;
  int max_d = -1;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    Row r{};
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &r.a, &r.d, &r.v) != 3) {
      throw std::runtime_error("bad sinogram row: " + line);
    }
    rows.push_back(r);
    max_a = std::max(max_a, r.a);
    max_d = std::max(max_d, r.d);
  }
  sf.angle_count = max_a + 1;
  sf.detector_count = max_d + 1;
  sf.values.assign(static_cast<std::size_t>(sf.angle_count) *
                       static_cast<std::size_t>(sf.detector_count),
                   0.0);
  for (const Row& r : rows) {
    sf.values[static_cast<std::size_t>(r.a) * sf.detector_count + r.d] = r.v;
  }

  std::ifstream probe(csv_path + ".meta");
  if (probe.good()) {
    sf.metadata = read_key_values(csv_path + ".meta");
    auto it = sf.metadata.find("weights_file");
    if (it != sf.metadata.end()) {
      sf.weights = read_weights_file(it->second);
      if (sf.weights.size() != sf.values.size()) {
        throw std::runtime_error("weights length mismatch for " + csv_path);
      }
    }
  }
  return sf;
}

}  // namespace bintomo
