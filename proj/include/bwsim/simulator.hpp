#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bwsim/experiment.hpp"
#include "bwsim/rng.hpp"
#include "bwsim/trial.hpp"

namespace bwsim {

/// Aggregated counts of a run. Only integers are accumulated, so the summary
/// is identical for any thread count.
struct RunSummary {
  std::array<std::uint64_t, 4> counts{};  // outcome_index order
  std::uint64_t trials = 0;
  std::uint64_t kept = 0;
  std::uint64_t discarded = 0;
  std::uint64_t tie_breaks = 0;              // trials decided by the configured tie break
  std::uint64_t partner_past_polarizer = 0;  // forcing arrived after the partner's split
  ModelKind model = ModelKind::QuantumMechanics;
  std::uint64_t seed = 0;
  std::uint64_t config_digest = 0;

  /// Fraction of kept trials with the given outcome; 0 when nothing was kept.
  double probability(int outcome) const;
  /// sqrt(p (1 - p) / kept).
  double standard_error(int outcome) const;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// Reference cell for emission timing: first periodic cell on arm 1, else on arm 2.
/// Returns the arm index (1 or 2) or 0 when no periodic cell exists.
int reference_cell_arm(const ExperimentConfig& cfg) noexcept;

/// Emission time for one trial relative to the cell schedules: uniform over
/// one full switching period 2 delta_t, or locked so the reference cell is
/// entered at the start of a mode.
double sample_emission_offset(const ExperimentConfig& cfg, std::uint64_t index, TrialStream& rng);

/// Propagates both photons at c from an emission at `emission_offset` and
/// records every passage and the cell modes met. Channels are left unresolved.
TrialRecord build_timeline(const ExperimentConfig& cfg, double emission_offset, std::uint64_t index = 0);

/// False (discard) iff some periodic cell was reached more than (1 - q) delta_t into its mode.
bool logic_filter(const TrialRecord& trial, const ExperimentConfig& cfg, double q);

/// Samples the channels of a timed trial under the quantum-mechanical prediction
/// with analyzer angles shifted by the cells active at passage.
void resolve_qm_trial(TrialRecord& trial, const ExperimentConfig& cfg, TrialStream& rng);

/// Complete trial `index` of a run with the given seed. Discarded trials keep
/// their timeline but have no channels.
TrialRecord simulate_trial(const ExperimentConfig& cfg, std::uint64_t seed, std::uint64_t index);

/// Runs cfg.run.trials trials with cfg.run.seed.
RunSummary run(const ExperimentConfig& cfg);
RunSummary run(const ExperimentConfig& cfg, std::uint64_t trials, std::uint64_t seed);

/// Analyzer settings for a CHSH test, in radians.
struct ChshAngles {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
};

struct ChshEstimate {
  std::array<double, 4> correlation{};  // settings (a,b), (a,b'), (a',b), (a',b')
  std::array<double, 4> correlation_error{};
  double S = 0.0;
  double S_error = 0.0;
};

inline constexpr std::array<const char*, 4> kChshSettingLabels{"ab", "ab'", "a'b", "a'b'"};

/// Runs `trials` pairs per setting with the polarizers set to each pair of
/// angles. E = (N_TT + N_RR - N_TR - N_RT) / N_kept with error sqrt((1 - E^2) / N_kept).
ChshEstimate estimate_chsh(const ExperimentConfig& cfg, const ChshAngles& angles, std::uint64_t trials,
                           std::uint64_t seed);

struct ScanRow {
  double theta = 0.0;
  double p21_estimate = 0.0;
  double standard_error = 0.0;
  double p21_analytic = 0.0;
};

/// One run per theta (applied to the arm-1 cells), all with the same seed.
std::vector<ScanRow> scan_theta(const ExperimentConfig& cfg, std::span<const double> thetas, std::uint64_t trials,
                                std::uint64_t seed);

/// `steps` evenly spaced values from lo to hi inclusive. Throws DomainError if steps < 2.
std::vector<double> theta_grid(double lo, double hi, int steps);

}  // namespace bwsim
