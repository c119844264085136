#pragma once

// Timing constraints for a periodically switched cell followed by a detour.
//
// A photon passes the cell with time r still remaining in the current mode.
// The detection must lie inside the future light cone of the mode change
// (passage + r) and inside the past light cone of the reversion
// (passage + r + delta_t). With the detour adding 2y/c to the straight
// cell-to-detector transit t_f, this bounds the detour height y.

namespace bwsim {

struct TimingParameters {
  double delta_t = 0.0;  // duration of each switch mode, s
  double t_f = 0.0;      // straight-line cell -> detector transit, s
  double y = 0.0;        // detour height, m
  double q = 1.0;        // discarded fraction of each mode, [0, 1]

  /// Throws DomainError on delta_t <= 0, t_f < 0, y < 0 or q outside [0, 1].
  void validate() const;
};

/// Open interval (lower, upper) of detour heights in meters.
struct HeightWindow {
  double lower = 0.0;
  double upper = 0.0;

  bool empty() const noexcept { return !(lower < upper); }
  bool contains(double y) const noexcept { return lower < y && y < upper; }
};

/// Cell -> detector transit including a detour of height y: t_f + 2y/c.
double detour_transit_time(double t_f, double y);

/// Heights for which every photon arriving with remaining mode time in
/// [r_min, r_max] is detected strictly after the change and strictly before
/// the reversion: (c r_max / 2, c (r_min + delta_t) / 2 - c t_f).
/// Throws DomainError unless 0 <= r_min <= r_max <= delta_t.
HeightWindow y_window(double delta_t, double t_f, double r_min, double r_max);

/// Window for the compromise scheme that keeps photons with remaining time >= q delta_t.
HeightWindow y_window_for_fraction(double delta_t, double t_f, double q);

/// True iff t_f < q delta_t / 2, i.e. the window for fraction q is non-empty.
bool feasible(double delta_t, double t_f, double q);

/// Largest cell -> detector distance compatible with fraction q: c q delta_t / 2.
double max_cell_detector_distance(double delta_t, double q);

/// Independent check of a single arrival. Steps an explicit square-wave
/// schedule to find the change and reversion events following a passage that
/// occurs `s_elapsed` into a mode, then classifies the detection against both
/// events with spacetime intervals. True iff the detection is time-like after
/// the change and time-like before the reversion.
bool brute_force_timeline_check(const TimingParameters& p, double s_elapsed);

}  // namespace bwsim
