#include "bwsim/geometry_planner.hpp"

#include <cmath>

#include "bwsim/errors.hpp"
#include "bwsim/lorentz.hpp"
#include "bwsim/switch_schedule.hpp"

namespace bwsim {

void TimingParameters::validate() const {
  if (!(delta_t > 0.0)) throw DomainError("delta_t must be positive");
  if (!(t_f >= 0.0)) throw DomainError("t_f must be non-negative");
  if (!(y >= 0.0)) throw DomainError("detour height must be non-negative");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("discard fraction must lie in [0, 1]");
}

double detour_transit_time(double t_f, double y) { return t_f + 2.0 * y / kSpeedOfLight; }

HeightWindow y_window(double delta_t, double t_f, double r_min, double r_max) {
  if (!(delta_t > 0.0)) throw DomainError("delta_t must be positive");
  if (!(0.0 <= r_min && r_min <= r_max && r_max <= delta_t))
    throw DomainError("remaining mode time must satisfy 0 <= r_min <= r_max <= delta_t");
  constexpr double c = kSpeedOfLight;
  return {c * r_max / 2.0, c * (r_min + delta_t) / 2.0 - c * t_f};
}

HeightWindow y_window_for_fraction(double delta_t, double t_f, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("discard fraction must lie in [0, 1]");
  return y_window(delta_t, t_f, q * delta_t, delta_t);
}

bool feasible(double delta_t, double t_f, double q) { return t_f < q * delta_t / 2.0; }

double max_cell_detector_distance(double delta_t, double q) { return kSpeedOfLight * q * delta_t / 2.0; }

bool brute_force_timeline_check(const TimingParameters& p, double s_elapsed) {
  p.validate();
  if (!(s_elapsed >= 0.0 && s_elapsed < p.delta_t)) throw DomainError("elapsed mode time must lie in [0, delta_t)");

  // Cell at the origin, passage at t = 0 during an inactivated interval.
  SwitchSchedule schedule{p.delta_t, p.delta_t - s_elapsed, 0.0, CellDrive::Periodic};
  const CellMode passage_mode = schedule.mode_at(0.0);

  // Walk boundaries forward until the mode differs from the passage mode, then
  // until it differs again.
  std::int64_t k = schedule.interval_index(0.0);
  while (schedule.mode_at(schedule.boundary(k)) == passage_mode) ++k;
  const double change_time = schedule.boundary(k);
  while (schedule.mode_at(schedule.boundary(k)) != passage_mode) ++k;
  const double revert_time = schedule.boundary(k);

  const SpacetimeEvent change{change_time, 0.0};
  const SpacetimeEvent revert{revert_time, 0.0};
  const SpacetimeEvent detection{detour_transit_time(p.t_f, p.y), kSpeedOfLight * p.t_f};

  const bool after_change =
      interval_class(change, detection) == IntervalClass::TimeLike && detection.t > change.t;
  const bool before_revert =
      interval_class(detection, revert) == IntervalClass::TimeLike && detection.t < revert.t;
  return after_change && before_revert;
}

}  // namespace bwsim
