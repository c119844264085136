#pragma once

#include <array>
#include <vector>

#include "bwsim/experiment.hpp"
#include "bwsim/lorentz.hpp"
#include "bwsim/qm_reference.hpp"
#include "bwsim/rng.hpp"
#include "bwsim/trial.hpp"

// Nonlocal B-wave model. The photon that is detected first in the preferred
// frame emits a B-wave from its polarizer. The wave runs back through the
// cells of its arm, is turned orthogonal by the source, and forces the
// partner photon into the resulting polarization. The partner then meets its
// remaining elements under the ordinary forward rules.

namespace bwsim {

struct BWaveState {
  PolarizationAngle angle;

  friend bool operator==(const BWaveState&, const BWaveState&) = default;
};

struct PreferredFrame {
  FrameBoost boost{0.0};
  int tie_break_arm = 1;
};

struct FirstArm {
  int arm = 1;
  bool tie_break_used = false;
};

/// Arm whose detection comes first in the preferred frame.
FirstArm first_detection(const TrialRecord& trial, const PreferredFrame& pf);

/// Arm whose trigger event (detection or polarizer split) comes first in the preferred frame.
FirstArm first_trigger(const TrialRecord& trial, const PreferredFrame& pf, TriggerPoint tp);

/// Fair draw for the first photon's channel.
Channel first_photon_outcome(TrialStream& rng) noexcept;

/// Transmitted leaves the polarizer along its axis, Reflected orthogonal to it.
BWaveState emit_bwave(Channel channel, PolarizationAngle polarizer);

/// Backward passage through a cell: activated cells undo their forward -theta rotation.
BWaveState backward_cell_action(BWaveState w, CellMode mode_at_passage, double theta);

/// The source re-emits the wave in the orthogonal polarization.
PolarizationAngle source_action(BWaveState w);

/// Polarizer split or detection on the given arm (1 or 2).
SpacetimeEvent trigger_event(const TrialRecord& trial, int arm, TriggerPoint tp);

/// Lab time at which a cell at signed coordinate x is simultaneous, in the
/// preferred frame, with `event`.
double simultaneous_lab_time(const SpacetimeEvent& event, double x, const FrameBoost& pf) noexcept;

/// Runs the B-wave emitted by `first_arm` back to the source. Cells before the
/// polarizer act in the mode they hold when simultaneous with the trigger.
PolarizationAngle forced_state_from(const TrialRecord& trial, const ArmLayout& first_layout, int first_arm,
                                    Channel first_channel, const SpacetimeEvent& trigger, const FrameBoost& pf);

/// Imposes `forced` on the partner photon at the forcing event and returns its
/// probability of leaving its polarizer in the Transmitted channel. Cells the
/// partner already crossed act on the B-wave in their mode at the forcing
/// time; cells still ahead act on the photon in their mode at its passage.
/// Throws ModelConsistencyError if the partner was detected before the forcing event.
double force_partner(TrialRecord& trial, const ArmLayout& partner_layout, int partner_arm,
                     PolarizationAngle forced, const SpacetimeEvent& forcing, const FrameBoost& pf);

/// Resolves both channels of a timed trial under the B-wave model.
void resolve_bwave_trial(TrialRecord& trial, const ExperimentConfig& cfg, TrialStream& rng);

/// Both photons transmitted, vertical polarizers, nu_1 through an inactivated
/// C_1 that is activated when the B-wave crosses it: sin^2(theta) / 2.
double appendix_P21(double theta);

/// Cell setting held constant in time.
struct StaticArm {
  double polarizer_angle = 0.0;
  std::vector<double> active_thetas;  // thetas of activated cells before the polarizer
};

/// Joint distribution (outcome_index order) from composing the B-wave rules
/// analytically for a static setting, with `first_arm` detected first.
std::array<double, 4> static_bwave_distribution(const StaticArm& arm1, const StaticArm& arm2, int first_arm = 1);

}  // namespace bwsim
