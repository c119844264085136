#include "bwsim/bwave.hpp"

#include <cmath>
#include <ranges>

#include "bwsim/errors.hpp"

namespace bwsim {

namespace {

constexpr double kC2 = kSpeedOfLight * kSpeedOfLight;

double frame_time(const SpacetimeEvent& e, const FrameBoost& pf) noexcept { return boost(e, pf).t; }

FirstArm earlier(const SpacetimeEvent& arm1, const SpacetimeEvent& arm2, const PreferredFrame& pf) {
  switch (ordering_in_frame(arm1, arm2, pf.boost)) {
    case Ordering::Before:
      return {1, false};
    case Ordering::After:
      return {2, false};
    case Ordering::Simultaneous:
      break;
  }
  return {pf.tie_break_arm, true};
}

bool is_cell_before_polarizer(const Passage& p, double polarizer_position) {
  return p.kind == ElementKind::Cell && p.position < polarizer_position;
}

}  // namespace

FirstArm first_detection(const TrialRecord& trial, const PreferredFrame& pf) {
  return first_trigger(trial, pf, TriggerPoint::Detector);
}

FirstArm first_trigger(const TrialRecord& trial, const PreferredFrame& pf, TriggerPoint tp) {
  return earlier(trigger_event(trial, 1, tp), trigger_event(trial, 2, tp), pf);
}

Channel first_photon_outcome(TrialStream& rng) noexcept {
  return rng.uniform() < 0.5 ? Channel::Transmitted : Channel::Reflected;
}

BWaveState emit_bwave(Channel channel, PolarizationAngle polarizer) {
  return {channel == Channel::Transmitted ? polarizer : polarizer.orthogonal()};
}

BWaveState backward_cell_action(BWaveState w, CellMode mode_at_passage, double theta) {
  if (mode_at_passage == CellMode::Inactivated) return w;
  return {w.angle.rotated(theta)};
}

PolarizationAngle source_action(BWaveState w) { return w.angle.orthogonal(); }

SpacetimeEvent trigger_event(const TrialRecord& trial, int arm, TriggerPoint tp) {
  const ArmTimeline& timeline = trial.arms.at(static_cast<std::size_t>(arm - 1));
  return tp == TriggerPoint::Detector ? timeline.detection().event : timeline.polarizer().event;
}

double simultaneous_lab_time(const SpacetimeEvent& event, double x, const FrameBoost& pf) noexcept {
  return frame_time(event, pf) / pf.gamma() + pf.velocity() * x / kC2;
}

PolarizationAngle forced_state_from(const TrialRecord& trial, const ArmLayout& first_layout, int first_arm,
                                    Channel first_channel, const SpacetimeEvent& trigger, const FrameBoost& pf) {
  const ArmTimeline& timeline = trial.arms.at(static_cast<std::size_t>(first_arm - 1));
  const double polarizer_position = first_layout.polarizer().position;
  BWaveState w = emit_bwave(first_channel, PolarizationAngle(first_layout.polarizer_angle));
  for (const Passage& p : timeline.passages | std::views::reverse) {
    if (!is_cell_before_polarizer(p, polarizer_position)) continue;
    const CellMode mode = first_layout.schedule.mode_at(simultaneous_lab_time(trigger, p.event.x, pf));
    w = backward_cell_action(w, mode, first_layout.schedule.theta);
  }
  return source_action(w);
}

double force_partner(TrialRecord& trial, const ArmLayout& partner_layout, int partner_arm,
                     PolarizationAngle forced, const SpacetimeEvent& forcing, const FrameBoost& pf) {
  const ArmTimeline& timeline = trial.arms.at(static_cast<std::size_t>(partner_arm - 1));
  const double forcing_time = frame_time(forcing, pf);
  if (frame_time(timeline.detection().event, pf) < forcing_time - kSimultaneityTolerance)
    throw ModelConsistencyError("partner photon was absorbed before the B-wave reached it");

  const double polarizer_position = partner_layout.polarizer().position;
  const double theta = partner_layout.schedule.theta;
  PolarizationAngle state = forced;
  for (const Passage& p : timeline.passages) {
    if (!is_cell_before_polarizer(p, polarizer_position)) continue;
    const bool crossed = frame_time(p.event, pf) < forcing_time;
    const CellMode mode =
        crossed ? partner_layout.schedule.mode_at(simultaneous_lab_time(forcing, p.event.x, pf)) : p.mode;
    if (mode == CellMode::Activated) state = state.rotated(-theta);
  }

  trial.forced_state = forced;
  trial.partner_past_polarizer = frame_time(timeline.polarizer().event, pf) < forcing_time;
  return malus(state, PolarizationAngle(partner_layout.polarizer_angle), Channel::Transmitted);
}

void resolve_bwave_trial(TrialRecord& trial, const ExperimentConfig& cfg, TrialStream& rng) {
  const PreferredFrame pf{FrameBoost(cfg.preferred_frame_velocity), cfg.tie_break_arm};
  const FirstArm first = first_trigger(trial, pf, cfg.trigger);
  const int partner = 3 - first.arm;
  const ArmLayout& first_layout = cfg.arms[static_cast<std::size_t>(first.arm - 1)];
  const ArmLayout& partner_layout = cfg.arms[static_cast<std::size_t>(partner - 1)];

  const Channel first_channel = first_photon_outcome(rng);
  const SpacetimeEvent trigger = trigger_event(trial, first.arm, cfg.trigger);
  const PolarizationAngle forced =
      forced_state_from(trial, first_layout, first.arm, first_channel, trigger, pf.boost);
  const double p_transmit = force_partner(trial, partner_layout, partner, forced, trigger, pf.boost);
  const Channel partner_channel = rng.uniform() < p_transmit ? Channel::Transmitted : Channel::Reflected;

  trial.first_arm = first.arm;
  trial.tie_break_used = first.tie_break_used;
  trial.trigger = trigger;
  trial.bwave_state = forced.orthogonal();
  trial.arms[static_cast<std::size_t>(first.arm - 1)].channel = first_channel;
  trial.arms[static_cast<std::size_t>(partner - 1)].channel = partner_channel;
}

double appendix_P21(double theta) {
  const double s = std::sin(theta);
  return 0.5 * s * s;
}

std::array<double, 4> static_bwave_distribution(const StaticArm& arm1, const StaticArm& arm2, int first_arm) {
  if (first_arm != 1 && first_arm != 2) throw DomainError("first arm must be 1 or 2");
  const StaticArm& first = first_arm == 1 ? arm1 : arm2;
  const StaticArm& partner = first_arm == 1 ? arm2 : arm1;

  std::array<double, 4> dist{};
  for (Channel first_channel : {Channel::Transmitted, Channel::Reflected}) {
    BWaveState w = emit_bwave(first_channel, PolarizationAngle(first.polarizer_angle));
    for (double theta : first.active_thetas | std::views::reverse)
      w = backward_cell_action(w, CellMode::Activated, theta);
    PolarizationAngle state = source_action(w);
    for (double theta : partner.active_thetas) state = state.rotated(-theta);

    for (Channel partner_channel : {Channel::Transmitted, Channel::Reflected}) {
      const double p = 0.5 * malus(state, PolarizationAngle(partner.polarizer_angle), partner_channel);
      const JointOutcome o = first_arm == 1 ? JointOutcome{first_channel, partner_channel}
                                            : JointOutcome{partner_channel, first_channel};
      dist[static_cast<std::size_t>(outcome_index(o))] = p;
    }
  }
  return dist;
}

}  // namespace bwsim
