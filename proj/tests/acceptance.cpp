// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bwsim/bwave.hpp"
#include "bwsim/config_io.hpp"
#include "bwsim/geometry_planner.hpp"
#include "bwsim/lorentz.hpp"
#include "bwsim/qm_reference.hpp"
#include "bwsim/report.hpp"
#include "bwsim/simulator.hpp"
#include "support.hpp"

using namespace bwsim;
using bwsim::testing::bundled;

namespace {

constexpr double c = kSpeedOfLight;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_6_sig(double got, double want) { return std::abs(got - want) <= 5e-7 * std::abs(want); }

Verdict single_cell_reproduction() {
  Verdict v;
  ExperimentConfig cfg = bundled("single_cell.ini");
  cfg.run.threads = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 1; k <= 5; ++k) {
    const double theta = k * kPi / 12;
    cfg.arms[0].schedule.theta = theta;
    const RunSummary s = run(cfg, 1'000'000, 20061016);
    const double p = s.probability(0), se = s.standard_error(0), want = appendix_P21(theta);
    v.detail << " theta=" << k << "pi/12: " << format_g12(p) << " vs " << format_g12(want) << ";";
    v.require(s.kept == 1'000'000, "trials discarded");
    v.require(std::abs(p - want) <= 3.0 * se, "outside 3 stderr at theta=" + std::to_string(k) + "pi/12");
  }
  const double elapsed = seconds_since(t0);
  v.detail << " runtime " << format_g12(elapsed) << " s";
  v.require(elapsed < 60.0, "runtime over 60 s");
  return v;
}

Verdict qm_null() {
  Verdict v;
  ExperimentConfig cfg = bundled("single_cell.ini");
  cfg.model = ModelKind::QuantumMechanics;
  const RunSummary s = run(cfg, 1'000'000, 20061016);
  v.detail << " TT count " << s.counts[0] << " of " << s.kept;
  v.require(s.counts[0] == 0 && s.kept == 1'000'000, "TT observed");
  return v;
}

Verdict static_equivalence() {
  Verdict v;
  std::mt19937_64 gen(314159);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::bernoulli_distribution coin(0.5);
  double worst_analytic = 0.0, worst_z = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = angle(gen), b = angle(gen), th1 = angle(gen), th2 = angle(gen);
    const bool on1 = coin(gen), on2 = coin(gen);
    ExperimentConfig cfg = bwsim::testing::static_fig1(a, b, th1, th2, on1, on2);

    StaticArm s1{a, {}}, s2{b, {}};
    std::vector<double> r1, r2;
    if (on1) s1.active_thetas.push_back(th1), r1.push_back(-th1);
    if (on2) s2.active_thetas.push_back(th2), r2.push_back(-th2);
    const auto qm = joint_distribution(effective_angle(PolarizationAngle(a), r1), effective_angle(PolarizationAngle(b), r2));
    const auto bw = static_bwave_distribution(s1, s2, cfg.tie_break_arm);
    for (int k = 0; k < 4; ++k) worst_analytic = std::max(worst_analytic, std::abs(qm[k] - bw[k]));

    cfg.model = ModelKind::QuantumMechanics;
    const RunSummary mq = run(cfg, 100'000, 1000 + i);
    cfg.model = ModelKind::BWave;
    const RunSummary mb = run(cfg, 100'000, 2000 + i);
    for (int k = 0; k < 4; ++k) {
      const double n = 100'000.0;
      const double se_floor = std::sqrt(qm[k] * (1.0 - qm[k]) / n);
      const double se_q = std::max(mq.standard_error(k), se_floor);
      const double se_b = std::max(mb.standard_error(k), se_floor);
      const double diff = std::abs(mq.probability(k) - mb.probability(k));
      const double combined = std::hypot(se_q, se_b);
      if (combined > 0.0) worst_z = std::max(worst_z, diff / combined);
      v.require(combined > 0.0 ? diff <= 4.0 * combined : diff == 0.0, "MC disagreement in config " + std::to_string(i));
      if (se_q > 0.0) v.require(std::abs(mq.probability(k) - qm[k]) <= 4.0 * se_q, "QM MC off analytic");
      if (se_b > 0.0) v.require(std::abs(mb.probability(k) - bw[k]) <= 4.0 * se_b, "B-wave MC off analytic");
    }
  }
  v.detail << " max analytic diff " << worst_analytic << ", max MC z " << format_g12(worst_z);
  v.require(worst_analytic <= 1e-12, "analytic disagreement");
  return v;
}

Verdict chsh() {
  Verdict v;
  const ExperimentConfig cfg = bundled("chsh.ini");
  const ChshEstimate opt = estimate_chsh(cfg, {0.0, kPi / 4, kPi / 8, 3 * kPi / 8}, 1'000'000, 11);
  const ChshEstimate flat = estimate_chsh(cfg, {0.0, 0.0, 0.0, 0.0}, 1'000'000, 12);
  v.detail << " S=" << format_g12(opt.S) << " +- " << format_g12(opt.S_error) << ", equal-angle S=" << format_g12(flat.S);
  v.require(std::abs(opt.S - 2.0 * std::sqrt(2.0)) <= 0.02, "S not near 2 sqrt 2");
  v.require(std::abs(flat.S - 2.0) <= 0.02, "control not near 2");
  return v;
}

Verdict planner() {
  Verdict v;
  const double dt = 20e-9, q = 0.1, tf = 0.5e-9;
  const double tf_bound = q * dt / 2.0;
  const double dist = max_cell_detector_distance(dt, q);
  const HeightWindow w = y_window_for_fraction(dt, tf, q);
  v.detail << " t_f bound " << format_g12(tf_bound * 1e9) << " ns, max distance " << format_g12(dist) << " m, window ("
           << format_g12(w.lower) << ", " << format_g12(w.upper) << ") m";
  v.require(within_6_sig(tf_bound, 1e-9), "t_f bound");
  v.require(feasible(dt, std::nextafter(1e-9, 0.0), q) && !feasible(dt, 1e-9, q), "feasibility edge");
  v.require(within_6_sig(dist, 0.299792458), "max distance");
  v.require(within_6_sig(w.lower, 2.99792458), "window lower");
  v.require(within_6_sig(w.upper, 11.0 * c * dt / 20.0 - c * tf), "window upper");

  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int disagreements = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double d = (1.0 + 99.0 * unit(gen)) * 1e-9;
    const double t_f = unit(gen) * d;
    const double y = unit(gen) * c * d;
    const double s = unit(gen) * d;
    const double r = d - s;
    disagreements += y_window(d, t_f, r, r).contains(y) != brute_force_timeline_check({d, t_f, y, 1.0}, s);
  }
  v.detail << "; oracle disagreements " << disagreements << "/10000";
  v.require(disagreements == 0, "oracle disagreement");
  return v;
}

Verdict lorentz() {
  Verdict v;
  std::mt19937_64 gen(161803);
  std::uniform_real_distribution<double> time(-1e-7, 1e-7), pos(-30.0, 30.0), beta(-0.99, 0.99), unit(0.0, 1.0);
  double worst = 0.0;
  int timelike_flips = 0, timelike_pairs = 0, threshold_failures = 0;
  for (int i = 0; i < 100'000; ++i) {
    const SpacetimeEvent e1{time(gen), pos(gen)}, e2{time(gen), pos(gen)};
    const FrameBoost b(beta(gen) * c);
    const SpacetimeEvent b1 = boost(e1, b), b2 = boost(e2, b);
    const double scale = std::max(std::pow(c * (e2.t - e1.t), 2) + std::pow(e2.x - e1.x, 2),
                                  std::pow(c * (b2.t - b1.t), 2) + std::pow(b2.x - b1.x, 2));
    worst = std::max(worst, std::abs(interval_squared(b1, b2) - interval_squared(e1, e2)) / scale);
    if (interval_class(e1, e2) == IntervalClass::TimeLike) {
      ++timelike_pairs;
      timelike_flips += ordering_in_frame(e1, e2, b) != ordering_in_frame(e1, e2, FrameBoost(0.0));
    }
  }
  // Space-like detection/change pairs: flip exactly across the threshold.
  for (int i = 0; i < 10'000; ++i) {
    const double lead = (2.0 + 8.0 * unit(gen)) * 1e-9;
    const double t_f = lead * (1.5 + 18.5 * unit(gen));
    const double x = 0.1 + 4.9 * unit(gen);
    const LabGeometry g{x, x + c * t_f};
    const double t_change = 1e-7 * unit(gen);
    const SpacetimeEvent change{t_change, x}, detection{t_change + lead, g.detector_distance};
    const double vmin = own_switch_threshold(detection.t, change.t, g).velocity;
    threshold_failures += ordering_in_frame(detection, change, FrameBoost(vmin * (1.0 - 1e-9))) != Ordering::After;
    threshold_failures += ordering_in_frame(detection, change, FrameBoost(vmin * (1.0 + 1e-9))) != Ordering::Before;
  }
  v.detail << " max relative interval change " << worst << ", time-like flips " << timelike_flips << "/" << timelike_pairs
           << ", threshold failures " << threshold_failures << "/20000";
  v.require(worst <= 1e-12, "interval invariance");
  v.require(timelike_flips == 0 && timelike_pairs > 0, "time-like ordering");
  v.require(threshold_failures == 0, "threshold flip");
  return v;
}

Verdict logic_filter_fraction() {
  Verdict v;
  const ExperimentConfig cfg = bundled("fig3.ini");
  const RunSummary s = run(cfg, 1'000'000, 99);
  const double f = static_cast<double>(s.discarded) / 1e6;
  const double sigma = std::sqrt(0.1 * 0.9 / 1e6);
  v.detail << " discarded " << format_g12(f) << " (sigma " << format_g12(sigma) << ")";
  v.require(cfg.run.emission == EmissionLaw::Uniform && *cfg.run.discard_fraction == 0.1, "config");
  v.require(std::abs(f - 0.1) <= 3.0 * sigma, "fraction outside 3 sigma");
  return v;
}

Verdict determinism() {
  Verdict v;
  int checked = 0;
  for (const auto& path : bwsim::testing::bundled_configs()) {
    ExperimentConfig cfg = load_config(path);
    cfg.run.threads = 1;
    const std::string serial = summary_csv(run(cfg));
    cfg.run.threads = 4;
    const std::string parallel = summary_csv(run(cfg));
    const std::string again = summary_csv(run(cfg));
    v.require(serial == parallel && parallel == again, path.filename().string());
    ++checked;
  }
  v.detail << " " << checked << " configs, 1 vs 4 threads";
  v.require(checked > 0, "no bundled configs");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"single-cell P21 reproduction", single_cell_reproduction},
      {"quantum null", qm_null},
      {"static equivalence", static_equivalence},
      {"CHSH", chsh},
      {"geometry planner", planner},
      {"Lorentz", lorentz},
      {"logic filter", logic_filter_fraction},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " exception: " << e.what();
    }
    failures += !v.pass;
    std::printf("%s %zu %s:%s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
