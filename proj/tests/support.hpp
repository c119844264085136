#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "bwsim/config_io.hpp"
#include "bwsim/experiment.hpp"

namespace bwsim::testing {

inline std::filesystem::path config_dir() { return BWSIM_CONFIG_DIR; }

inline ExperimentConfig bundled(const std::string& name) { return load_config(config_dir() / name); }

inline std::vector<std::filesystem::path> bundled_configs() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(config_dir()))
    if (entry.path().extension() == ".ini") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

// fig1 layout with every cell held in one mode.
inline ExperimentConfig static_fig1(double angle1, double angle2, double theta1, double theta2, bool active1,
                                    bool active2) {
  ExperimentConfig cfg;
  cfg.topology = Topology::Fig1Symmetric;
  const auto elements = preset_elements(Topology::Fig1Symmetric, PresetGeometry{});
  const double angles[2] = {angle1, angle2};
  const double thetas[2] = {theta1, theta2};
  const bool active[2] = {active1, active2};
  for (std::size_t a = 0; a < 2; ++a) {
    cfg.arms[a].elements = elements[a];
    cfg.arms[a].polarizer_angle = angles[a];
    cfg.arms[a].schedule.theta = thetas[a];
    cfg.arms[a].schedule.drive = active[a] ? CellDrive::AlwaysActivated : CellDrive::AlwaysInactivated;
  }
  return cfg;
}

}  // namespace bwsim::testing
