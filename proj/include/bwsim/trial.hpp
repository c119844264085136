#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bwsim/experiment.hpp"
#include "bwsim/lorentz.hpp"
#include "bwsim/qm_reference.hpp"

namespace bwsim {

/// A photon crossing one element. Lab coordinates; x is negative on arm 2.
struct Passage {
  ElementKind kind = ElementKind::Cell;
  double position = 0.0;  // distance from the source, m
  SpacetimeEvent event;
  CellMode mode = CellMode::Inactivated;  // cells: mode met by the photon
  double elapsed_in_mode = 0.0;            // cells: time already spent in that mode
};

struct ArmTimeline {
  std::vector<Passage> passages;  // element order, ending at the detector
  std::optional<Channel> channel;

  const Passage& polarizer() const;
  const Passage& detection() const;
};

/// Event timeline and outcome of one photon pair.
struct TrialRecord {
  std::uint64_t index = 0;
  SpacetimeEvent emission;
  std::array<ArmTimeline, 2> arms;
  bool discarded = false;

  // Filled by the nonlocal model.
  int first_arm = 0;
  bool tie_break_used = false;
  std::optional<SpacetimeEvent> trigger;
  std::optional<PolarizationAngle> bwave_state;   // on arrival at the source
  std::optional<PolarizationAngle> forced_state;  // imposed on the partner by the source
  bool partner_past_polarizer = false;

  /// Throws std::logic_error if either channel is unresolved.
  JointOutcome outcome() const;
};

}  // namespace bwsim
