#include "bwsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "bwsim/bwave.hpp"
#include "bwsim/config_io.hpp"
#include "bwsim/errors.hpp"

namespace bwsim {

namespace {

const Passage& find_passage(const ArmTimeline& arm, ElementKind kind) {
  for (const Passage& p : arm.passages)
    if (p.kind == kind) return p;
  throw std::logic_error(std::string("timeline has no ") + to_string(kind) + " passage");
}

struct Tally {
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t kept = 0;
  std::uint64_t discarded = 0;
  std::uint64_t tie_breaks = 0;
  std::uint64_t partner_past_polarizer = 0;

  void add(const Tally& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    kept += o.kept;
    discarded += o.discarded;
    tie_breaks += o.tie_breaks;
    partner_past_polarizer += o.partner_past_polarizer;
  }
};

Tally run_block(const ExperimentConfig& cfg, std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
  Tally t;
  for (std::uint64_t i = begin; i < end; ++i) {
    const TrialRecord trial = simulate_trial(cfg, seed, i);
    if (trial.discarded) {
      ++t.discarded;
      continue;
    }
    ++t.kept;
    ++t.counts[static_cast<std::size_t>(outcome_index(trial.outcome()))];
    t.tie_breaks += trial.tie_break_used;
    t.partner_past_polarizer += trial.partner_past_polarizer;
  }
  return t;
}

double cell_rotation(const ArmLayout& layout, const ArmTimeline& timeline) {
  const double polarizer_position = layout.polarizer().position;
  double rotation = 0.0;
  for (const Passage& p : timeline.passages)
    if (p.kind == ElementKind::Cell && p.position < polarizer_position && p.mode == CellMode::Activated)
      rotation -= layout.schedule.theta;
  return rotation;
}

}  // namespace

const Passage& ArmTimeline::polarizer() const { return find_passage(*this, ElementKind::Polarizer); }
const Passage& ArmTimeline::detection() const { return find_passage(*this, ElementKind::Detector); }

JointOutcome TrialRecord::outcome() const {
  if (!arms[0].channel || !arms[1].channel) throw std::logic_error("trial outcome is unresolved");
  return {*arms[0].channel, *arms[1].channel};
}

double RunSummary::probability(int outcome) const {
  if (kept == 0) return 0.0;
  return static_cast<double>(counts.at(static_cast<std::size_t>(outcome))) / static_cast<double>(kept);
}

double RunSummary::standard_error(int outcome) const {
  if (kept == 0) return 0.0;
  const double p = probability(outcome);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(kept));
}

int reference_cell_arm(const ExperimentConfig& cfg) noexcept {
  for (int arm = 1; arm <= 2; ++arm) {
    const ArmLayout& layout = cfg.arms[static_cast<std::size_t>(arm - 1)];
    if (layout.has_cell() && layout.schedule.periodic()) return arm;
  }
  return 0;
}

double sample_emission_offset(const ExperimentConfig& cfg, std::uint64_t index, TrialStream& rng) {
  const int arm = reference_cell_arm(cfg);
  if (arm == 0) return 0.0;
  const ArmLayout& layout = cfg.arms[static_cast<std::size_t>(arm - 1)];
  const SwitchSchedule& s = layout.schedule;

  if (cfg.run.emission == EmissionLaw::Uniform) return rng.uniform() * 2.0 * s.delta_t;

  CellMode target = CellMode::Inactivated;
  switch (cfg.run.sync_mode) {
    case SyncMode::Inactivated: target = CellMode::Inactivated; break;
    case SyncMode::Activated: target = CellMode::Activated; break;
    case SyncMode::Alternate: target = index % 2 == 0 ? CellMode::Inactivated : CellMode::Activated; break;
  }
  const auto first_cell = std::find_if(layout.elements.begin(), layout.elements.end(),
                                       [](const Element& e) { return e.kind == ElementKind::Cell; });
  const double transit = layout.path_length_to(first_cell->position) / kSpeedOfLight;
  // Activated intervals have even index.
  auto k = static_cast<std::int64_t>(std::ceil((transit - s.phase) / s.delta_t));
  const bool even = k % 2 == 0;
  if (even != (target == CellMode::Activated)) ++k;
  return s.boundary(k) - transit;
}

TrialRecord build_timeline(const ExperimentConfig& cfg, double emission_offset, std::uint64_t index) {
  TrialRecord trial;
  trial.index = index;
  trial.emission = {emission_offset, 0.0};
  for (std::size_t a = 0; a < 2; ++a) {
    const ArmLayout& layout = cfg.arms[a];
    const double sign = a == 0 ? 1.0 : -1.0;
    ArmTimeline& timeline = trial.arms[a];
    timeline.passages.reserve(layout.elements.size());
    for (const Element& e : layout.elements) {
      Passage p;
      p.kind = e.kind;
      p.position = e.position;
      p.event = {emission_offset + layout.path_length_to(e.position) / kSpeedOfLight, sign * e.position};
      if (e.kind == ElementKind::Cell) {
        p.mode = layout.schedule.mode_at(p.event.t);
        p.elapsed_in_mode = layout.schedule.elapsed_in_mode(p.event.t);
      }
      if (!timeline.passages.empty() && !(p.event.t > timeline.passages.back().event.t))
        throw ConfigError("element passages must be strictly ordered in time");
      timeline.passages.push_back(p);
    }
  }
  return trial;
}

bool logic_filter(const TrialRecord& trial, const ExperimentConfig& cfg, double q) {
  for (std::size_t a = 0; a < 2; ++a) {
    const SwitchSchedule& s = cfg.arms[a].schedule;
    if (!s.periodic()) continue;
    const double limit = (1.0 - q) * s.delta_t;
    for (const Passage& p : trial.arms[a].passages)
      if (p.kind == ElementKind::Cell && p.elapsed_in_mode > limit) return false;
  }
  return true;
}

void resolve_qm_trial(TrialRecord& trial, const ExperimentConfig& cfg, TrialStream& rng) {
  const PolarizationAngle a_eff(cfg.arms[0].polarizer_angle - cell_rotation(cfg.arms[0], trial.arms[0]));
  const PolarizationAngle b_eff(cfg.arms[1].polarizer_angle - cell_rotation(cfg.arms[1], trial.arms[1]));
  const std::array<double, 4> dist = joint_distribution(a_eff, b_eff);

  const double u = rng.uniform();
  double cumulative = 0.0;
  int chosen = 3;
  for (int i = 0; i < 3; ++i) {
    cumulative += dist[static_cast<std::size_t>(i)];
    if (u < cumulative) {
      chosen = i;
      break;
    }
  }
  // Never land on a zero-probability tail outcome through rounding of the cumulative sum.
  while (dist[static_cast<std::size_t>(chosen)] == 0.0 && chosen > 0) --chosen;
  const JointOutcome o = outcome_from_index(chosen);
  trial.arms[0].channel = o.arm1;
  trial.arms[1].channel = o.arm2;
}

TrialRecord simulate_trial(const ExperimentConfig& cfg, std::uint64_t seed, std::uint64_t index) {
  TrialStream rng(seed, index);
  const double offset = sample_emission_offset(cfg, index, rng);
  TrialRecord trial = build_timeline(cfg, offset, index);
  if (!logic_filter(trial, cfg, cfg.run.discard_fraction.value_or(0.0))) {
    trial.discarded = true;
    return trial;
  }
  if (cfg.model == ModelKind::BWave)
    resolve_bwave_trial(trial, cfg, rng);
  else
    resolve_qm_trial(trial, cfg, rng);
  return trial;
}

RunSummary run(const ExperimentConfig& cfg) { return run(cfg, cfg.run.trials, cfg.run.seed); }

RunSummary run(const ExperimentConfig& cfg, std::uint64_t trials, std::uint64_t seed) {
  cfg.validate();
  unsigned threads = cfg.run.threads != 0 ? cfg.run.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(trials, 1)));

  Tally total;
  if (threads <= 1) {
    total = run_block(cfg, seed, 0, trials);
  } else {
    std::vector<Tally> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = trials * t / threads;
      const std::uint64_t end = trials * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          partial[t] = run_block(cfg, seed, begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
    for (const Tally& p : partial) total.add(p);
  }

  RunSummary s;
  s.counts = total.counts;
  s.trials = trials;
  s.kept = total.kept;
  s.discarded = total.discarded;
  s.tie_breaks = total.tie_breaks;
  s.partner_past_polarizer = total.partner_past_polarizer;
  s.model = cfg.model;
  s.seed = seed;
  s.config_digest = config_digest(cfg);
  return s;
}

ChshEstimate estimate_chsh(const ExperimentConfig& cfg, const ChshAngles& angles, std::uint64_t trials,
                           std::uint64_t seed) {
  const std::array<std::array<double, 2>, 4> settings{
      {{angles.a, angles.b}, {angles.a, angles.b_prime}, {angles.a_prime, angles.b}, {angles.a_prime, angles.b_prime}}};
  ChshEstimate est;
  double variance = 0.0;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    ExperimentConfig c = cfg;
    c.arms[0].polarizer_angle = settings[k][0];
    c.arms[1].polarizer_angle = settings[k][1];
    const RunSummary s = run(c, trials, mix64(seed + k));
    if (s.kept == 0) throw std::runtime_error("CHSH setting kept no trials");
    const auto n = static_cast<double>(s.kept);
    const auto signed_sum = static_cast<double>(s.counts[0] + s.counts[3]) - static_cast<double>(s.counts[1] + s.counts[2]);
    const double e = signed_sum / n;
    est.correlation[k] = e;
    est.correlation_error[k] = std::sqrt(std::max(0.0, 1.0 - e * e) / n);
    variance += est.correlation_error[k] * est.correlation_error[k];
  }
  const auto& E = est.correlation;
  est.S = std::abs(E[0] - E[1] + E[2] + E[3]);
  est.S_error = std::sqrt(variance);
  return est;
}

std::vector<ScanRow> scan_theta(const ExperimentConfig& cfg, std::span<const double> thetas, std::uint64_t trials,
                                std::uint64_t seed) {
  std::vector<ScanRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) {
    ExperimentConfig c = cfg;
    c.arms[0].schedule.theta = theta;
    const RunSummary s = run(c, trials, seed);
    rows.push_back({theta, s.probability(0), s.standard_error(0), appendix_P21(theta)});
  }
  return rows;
}

std::vector<double> theta_grid(double lo, double hi, int steps) {
  if (steps < 2) throw DomainError("a theta scan needs at least 2 steps");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  grid.back() = hi;
  return grid;
}

}  // namespace bwsim
