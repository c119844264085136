#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwsim/experiment.hpp"
#include "bwsim/geometry_planner.hpp"
#include "bwsim/lorentz.hpp"
#include "bwsim/simulator.hpp"

// Human-readable reports and CSV tables. Floats in CSV use 12 significant digits.

namespace bwsim {

/// printf("%.12g").
std::string format_g12(double v);

// ---- plan ----------------------------------------------------------------

struct ArmPlan {
  int arm = 1;
  double delta_t = 0.0;
  double t_f = 0.0;  // straight transit from the first cell to the detector
  double q = 1.0;
  HeightWindow window;
  bool feasible = false;
  double max_cell_detector_distance = 0.0;
  double cell_detector_distance = 0.0;
  std::optional<double> y;  // total detour height between cell and detector, if any
  bool y_in_window = false;
  double oracle_height = 0.0;  // height used for the oracle sweep
  int oracle_samples = 0;
  int oracle_passes = 0;        // samples the brute-force check accepted
  int oracle_disagreements = 0; // samples where the check and the closed-form window differ

  /// Window non-empty and, when a detour is configured, its height inside the window.
  bool ok() const noexcept { return feasible && (!y || y_in_window); }
};

/// Plans every arm that carries a periodic cell. `q` defaults to the config's
/// discard fraction, or 1 (synchronized emission) when unset.
/// Throws ConfigError when no arm has a periodic cell.
std::vector<ArmPlan> plan_experiment(const ExperimentConfig& cfg, std::optional<double> q = std::nullopt,
                                     int oracle_samples = 101);

std::string plan_text(const std::vector<ArmPlan>& plans);
std::string plan_csv(const std::vector<ArmPlan>& plans);

// ---- frames --------------------------------------------------------------

struct FramesReport {
  LabGeometry geometry;
  double t_detect = 0.0;
  double t_change_own = 0.0;
  double t_change_far = 0.0;
  VelocityThreshold own;
  VelocityThreshold far;
  IntervalClass own_pair = IntervalClass::SpaceLike;
  IntervalClass far_pair = IntervalClass::SpaceLike;
};

/// Thresholds for the arm-1 detection against the change of each cell. Times
/// left unset come from the config timeline with emission at t = 0: the
/// detection time, and the first mode boundary after each cell passage.
FramesReport analyze_frames(const ExperimentConfig& cfg, std::optional<double> t_detect = std::nullopt,
                            std::optional<double> t_change_own = std::nullopt,
                            std::optional<double> t_change_far = std::nullopt);

std::string frames_text(const FramesReport& r);
std::string frames_csv(const FramesReport& r);

// ---- simulate / scan / chsh ---------------------------------------------

std::string summary_text(const RunSummary& s);
/// Columns: outcome, count, probability, stderr, model, seed.
std::string summary_csv(const RunSummary& s);
/// Columns: theta_rad, p21_estimate, stderr, p21_analytic.
std::string scan_csv(std::span<const ScanRow> rows);
/// Columns: setting, E_estimate, stderr; last row is S.
std::string chsh_csv(const ChshEstimate& e);
std::string chsh_text(const ChshEstimate& e, const ChshAngles& angles);

const char* to_string(IntervalClass c) noexcept;

}  // namespace bwsim
