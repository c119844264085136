#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bwsim/switch_schedule.hpp"

namespace bwsim {

enum class Topology { Fig1Symmetric, Fig2SymmetricDetours, Fig3Asymmetric, Custom };
enum class ElementKind { Cell, Detour, Polarizer, Detector };
enum class ModelKind { QuantumMechanics, BWave };
/// Event that launches the B-wave: absorption at the detector, or the split at the polarizer.
enum class TriggerPoint { Detector, Polarizer };
enum class EmissionLaw { Uniform, Synchronized };
/// Mode entered by the reference cell at the instant a synchronized photon arrives.
enum class SyncMode { Inactivated, Activated, Alternate };

/// Optical element on one arm. `position` is the distance from the source
/// along the experiment axis; a detour adds 2 * height of path length there.
struct Element {
  ElementKind kind = ElementKind::Cell;
  double position = 0.0;  // m
  double height = 0.0;    // m, detours only

  friend bool operator==(const Element&, const Element&) = default;
};

/// One arm: ordered elements plus the settings of its cells and its polarizer.
/// Every cell on an arm follows the arm's schedule.
struct ArmLayout {
  std::vector<Element> elements;
  SwitchSchedule schedule;
  double polarizer_angle = 0.0;  // rad from vertical

  const Element& polarizer() const;
  const Element& detector() const;
  bool has_cell() const noexcept;
  /// Optical path length from the source to `position`, including detours
  /// that start strictly before it.
  double path_length_to(double position) const noexcept;

  friend bool operator==(const ArmLayout&, const ArmLayout&) = default;
};

struct RunSettings {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::optional<double> discard_fraction;  // q; the simulator treats a missing value as 0
  EmissionLaw emission = EmissionLaw::Uniform;
  SyncMode sync_mode = SyncMode::Inactivated;
  unsigned threads = 0;  // 0: hardware concurrency

  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct ExperimentConfig {
  Topology topology = Topology::Custom;
  std::array<ArmLayout, 2> arms;
  ModelKind model = ModelKind::QuantumMechanics;
  TriggerPoint trigger = TriggerPoint::Detector;
  double preferred_frame_velocity = 0.0;  // m/s relative to the lab
  int tie_break_arm = 1;
  RunSettings run;

  /// Throws ConfigError if any structural or physical constraint is violated.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parameters for the preset layouts. Distances are shared by both arms.
struct PresetGeometry {
  double cell_distance = 1.0;
  double polarizer_distance = 0.0;  // 0: midway between cell and detector
  double detector_distance = 1.15;
  std::array<double, 2> detour_height{0.0, 0.0};
  double detour_position = 0.0;  // 0: midway between the surrounding elements
  bool detour_after_polarizer = false;
  double source_detour_height = 0.0;  // fig3, arm 2
  double source_detour_position = 0.0;  // 0: half the cell distance
};

/// Element lists for the preset topologies:
///   fig1  cell, polarizer, detector on both arms
///   fig2  as fig1 with a detour on each arm
///   fig3  arm 1 as fig2; arm 2 has a long detour before its polarizer and no cell
std::array<std::vector<Element>, 2> preset_elements(Topology topology, const PresetGeometry& g);

const char* to_string(Topology t) noexcept;
const char* to_string(ElementKind k) noexcept;
const char* to_string(ModelKind m) noexcept;
const char* to_string(TriggerPoint t) noexcept;
const char* to_string(EmissionLaw e) noexcept;
const char* to_string(SyncMode s) noexcept;
const char* to_string(CellDrive d) noexcept;

}  // namespace bwsim
