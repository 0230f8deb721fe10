#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace bintomo {

// Sinogram CSV with header "angle_index,detector_index,value" plus a
// key=value sidecar at <path>.meta carrying geometry, seed and noise
// bookkeeping. Optional per-ray weights live one value per line at
// <path>.weights (referenced from the metadata).
struct SinogramFile {
  int angle_count = 0;
  int detector_count = 0;
  std::vector<double> values;  // angle-major
  std::vector<double> weights;
  std::map<std::string, std::string> metadata;
};

void write_sinogram(const std::string& csv_path, int angle_count,
                    int detector_count, std::span<const double> values,
                    const std::map<std::string, std::string>& metadata,
                    std::span<const double> weights = {});

SinogramFile read_sinogram(const std::string& csv_path);

std::map<std::string, std::string> read_key_values(const std::string& path);

}  // namespace bintomo
