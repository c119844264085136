#include "bwsim/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bwsim/errors.hpp"

namespace bwsim {

namespace {

const Element* first_cell(const ArmLayout& arm) {
  for (const Element& e : arm.elements)
    if (e.kind == ElementKind::Cell) return &e;
  return nullptr;
}

std::string ns(double seconds) { return format_g12(seconds * 1e9) + " ns"; }

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

}  // namespace

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* to_string(IntervalClass c) noexcept {
  switch (c) {
    case IntervalClass::TimeLike: return "time-like";
    case IntervalClass::SpaceLike: return "space-like";
    case IntervalClass::LightLike: return "light-like";
  }
  return "?";
}

std::vector<ArmPlan> plan_experiment(const ExperimentConfig& cfg, std::optional<double> q, int oracle_samples) {
  const double fraction = q ? *q : cfg.run.discard_fraction.value_or(1.0);
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError("discard fraction must lie in [0, 1]");
  oracle_samples = std::max(oracle_samples, 1);

  std::vector<ArmPlan> plans;
  for (int arm = 1; arm <= 2; ++arm) {
    const ArmLayout& layout = cfg.arms[static_cast<std::size_t>(arm - 1)];
    const Element* cell = first_cell(layout);
    if (!cell || !layout.schedule.periodic()) continue;
    const Element& detector = layout.detector();

    ArmPlan p;
    p.arm = arm;
    p.delta_t = layout.schedule.delta_t;
    p.cell_detector_distance = detector.position - cell->position;
    p.t_f = p.cell_detector_distance / kSpeedOfLight;
    p.q = fraction;
    p.window = y_window_for_fraction(p.delta_t, p.t_f, fraction);
    p.feasible = feasible(p.delta_t, p.t_f, fraction);
    p.max_cell_detector_distance = max_cell_detector_distance(p.delta_t, fraction);

    double height = 0.0;
    bool has_detour = false;
    for (const Element& e : layout.elements) {
      if (e.kind == ElementKind::Detour && e.position > cell->position) {
        height += e.height;
        has_detour = true;
      }
    }
    if (has_detour) {
      p.y = height;
      p.y_in_window = p.window.contains(height);
    }

    // Sweep arrivals over the accepted part of the mode.
    p.oracle_height = p.y ? *p.y : (p.feasible ? 0.5 * (p.window.lower + p.window.upper) : 0.0);
    const double accepted = std::min((1.0 - fraction) * p.delta_t, std::nextafter(p.delta_t, 0.0));
    const int samples = accepted > 0.0 ? oracle_samples : 1;
    for (int i = 0; i < samples; ++i) {
      const double s = samples == 1 ? 0.0 : accepted * i / (samples - 1);
      const TimingParameters params{p.delta_t, p.t_f, p.oracle_height, fraction};
      const bool check = brute_force_timeline_check(params, s);
      const double r = p.delta_t - s;
      const bool closed_form = y_window(p.delta_t, p.t_f, r, r).contains(p.oracle_height);
      ++p.oracle_samples;
      p.oracle_passes += check;
      p.oracle_disagreements += check != closed_form;
    }
    plans.push_back(p);
  }
  if (plans.empty()) throw ConfigError("no arm carries a periodically switched cell; nothing to plan");
  return plans;
}

std::string plan_text(const std::vector<ArmPlan>& plans) {
  std::ostringstream out;
  for (const ArmPlan& p : plans) {
    out << "arm " << p.arm << "\n"
        << "  mode duration          " << ns(p.delta_t) << "\n"
        << "  cell-detector transit  " << ns(p.t_f) << " (" << format_g12(p.cell_detector_distance) << " m)\n"
        << "  discard fraction q     " << format_g12(p.q) << "\n"
        << "  detour height window   ";
    if (p.window.empty())
      out << "empty\n";
    else
      out << "(" << format_g12(p.window.lower) << " m, " << format_g12(p.window.upper) << " m)\n";
    out << "  feasible               " << (p.feasible ? "yes" : "no") << " (requires t_f < " << ns(p.q * p.delta_t / 2.0)
        << ")\n"
        << "  max cell-detector      " << format_g12(p.max_cell_detector_distance) << " m\n";
    if (p.y)
      out << "  configured detour      " << format_g12(*p.y) << " m, " << (p.y_in_window ? "inside" : "OUTSIDE")
          << " window\n";
    out << "  brute-force oracle     " << p.oracle_passes << "/" << p.oracle_samples << " arrivals pass at y = "
        << format_g12(p.oracle_height) << " m; " << p.oracle_disagreements << " disagreements with closed form\n"
        << "  verdict                " << (p.ok() ? "OK" : "INFEASIBLE") << "\n";
  }
  return out.str();
}

std::string plan_csv(const std::vector<ArmPlan>& plans) {
  std::ostringstream out;
  out << "arm,delta_t_s,t_f_s,q,y_lower_m,y_upper_m,feasible,max_cell_detector_m,y_m,y_in_window,oracle_passes,"
         "oracle_samples,oracle_disagreements\n";
  for (const ArmPlan& p : plans) {
    out << p.arm << "," << format_g12(p.delta_t) << "," << format_g12(p.t_f) << "," << format_g12(p.q) << ","
        << format_g12(p.window.lower) << "," << format_g12(p.window.upper) << "," << (p.feasible ? 1 : 0) << ","
        << format_g12(p.max_cell_detector_distance) << "," << (p.y ? format_g12(*p.y) : "") << ","
        << (p.y_in_window ? 1 : 0) << "," << p.oracle_passes << "," << p.oracle_samples << ","
        << p.oracle_disagreements << "\n";
  }
  return out.str();
}

FramesReport analyze_frames(const ExperimentConfig& cfg, std::optional<double> t_detect,
                            std::optional<double> t_change_own, std::optional<double> t_change_far) {
  const ArmLayout& arm1 = cfg.arms[0];
  const ArmLayout& arm2 = cfg.arms[1];
  const Element* cell1 = first_cell(arm1);
  if (!cell1) throw ConfigError("frame analysis needs a cell on arm 1");

  FramesReport r;
  r.geometry = {cell1->position, arm1.detector().position};
  r.geometry.validate();

  const TrialRecord timeline = build_timeline(cfg, 0.0);
  auto change_after_passage = [&](const ArmLayout& layout, std::size_t arm) -> std::optional<double> {
    for (const Passage& p : timeline.arms[arm].passages)
      if (p.kind == ElementKind::Cell) return layout.schedule.next_boundary(p.event.t);
    return std::nullopt;
  };

  r.t_detect = t_detect ? *t_detect : timeline.arms[0].detection().event.t;
  r.t_change_own = t_change_own ? *t_change_own : *change_after_passage(arm1, 0);
  if (t_change_far)
    r.t_change_far = *t_change_far;
  else
    r.t_change_far = change_after_passage(arm2, 1).value_or(r.t_change_own);

  r.own = own_switch_threshold(r.t_detect, r.t_change_own, r.geometry);
  r.far = far_switch_threshold(r.t_detect, r.t_change_far, r.geometry);
  const SpacetimeEvent detection{r.t_detect, r.geometry.detector_distance};
  r.own_pair = interval_class(detection, {r.t_change_own, r.geometry.cell_distance});
  r.far_pair = interval_class(detection, {r.t_change_far, -r.geometry.cell_distance});
  return r;
}

std::string frames_text(const FramesReport& r) {
  std::ostringstream out;
  auto line = [&](const char* label, const VelocityThreshold& v, IntervalClass c) {
    out << label << format_g12(v.fraction_of_c()) << " c, pair " << to_string(c);
    if (!v.frame_exists) out << "; no frame exists; ordering absolute";
    out << "\n";
  };
  out << "cell distance x          " << format_g12(r.geometry.cell_distance) << " m\n"
      << "detector distance x_bar  " << format_g12(r.geometry.detector_distance) << " m\n"
      << "detection time           " << ns(r.t_detect) << "\n"
      << "own cell change          " << ns(r.t_change_own) << "\n"
      << "far cell change          " << ns(r.t_change_far) << "\n";
  line("own-cell threshold       ", r.own, r.own_pair);
  line("far-cell threshold       ", r.far, r.far_pair);
  return out.str();
}

std::string frames_csv(const FramesReport& r) {
  std::ostringstream out;
  out << "pair,t_detect_s,t_change_s,threshold_fraction_c,frame_exists,interval\n"
      << "own," << format_g12(r.t_detect) << "," << format_g12(r.t_change_own) << ","
      << format_g12(r.own.fraction_of_c()) << "," << (r.own.frame_exists ? 1 : 0) << "," << to_string(r.own_pair)
      << "\n"
      << "far," << format_g12(r.t_detect) << "," << format_g12(r.t_change_far) << ","
      << format_g12(r.far.fraction_of_c()) << "," << (r.far.frame_exists ? 1 : 0) << "," << to_string(r.far_pair)
      << "\n";
  return out.str();
}

std::string summary_text(const RunSummary& s) {
  std::ostringstream out;
  out << "model        " << to_string(s.model) << "\n"
      << "seed         " << s.seed << "\n"
      << "config       " << hex64(s.config_digest) << "\n"
      << "trials       " << s.trials << " (kept " << s.kept << ", discarded " << s.discarded << ")\n";
  for (int i = 0; i < 4; ++i)
    out << "P(" << outcome_label(i) << ")        " << format_g12(s.probability(i)) << " +- "
        << format_g12(s.standard_error(i)) << "  [" << s.counts[static_cast<std::size_t>(i)] << "]\n";
  if (s.tie_breaks > 0) out << "note: " << s.tie_breaks << " trials used the simultaneous-detection tie break\n";
  if (s.partner_past_polarizer > 0)
    out << "note: in " << s.partner_past_polarizer << " trials the partner had already crossed its polarizer\n";
  return out.str();
}

std::string summary_csv(const RunSummary& s) {
  std::ostringstream out;
  out << "outcome,count,probability,stderr,model,seed\n";
  for (int i = 0; i < 4; ++i)
    out << outcome_label(i) << "," << s.counts[static_cast<std::size_t>(i)] << "," << format_g12(s.probability(i)) << ","
        << format_g12(s.standard_error(i)) << "," << to_string(s.model) << "," << s.seed << "\n";
  return out.str();
}

std::string scan_csv(std::span<const ScanRow> rows) {
  std::ostringstream out;
  out << "theta_rad,p21_estimate,stderr,p21_analytic\n";
  for (const ScanRow& r : rows)
    out << format_g12(r.theta) << "," << format_g12(r.p21_estimate) << "," << format_g12(r.standard_error) << ","
        << format_g12(r.p21_analytic) << "\n";
  return out.str();
}

std::string chsh_csv(const ChshEstimate& e) {
  std::ostringstream out;
  out << "setting,E_estimate,stderr\n";
  for (std::size_t k = 0; k < 4; ++k)
    out << kChshSettingLabels[k] << "," << format_g12(e.correlation[k]) << "," << format_g12(e.correlation_error[k])
        << "\n";
  out << "S," << format_g12(e.S) << "," << format_g12(e.S_error) << "\n";
  return out.str();
}

std::string chsh_text(const ChshEstimate& e, const ChshAngles& angles) {
  std::ostringstream out;
  out << "angles (rad)  a = " << format_g12(angles.a) << ", a' = " << format_g12(angles.a_prime)
      << ", b = " << format_g12(angles.b) << ", b' = " << format_g12(angles.b_prime) << "\n";
  for (std::size_t k = 0; k < 4; ++k)
    out << "E(" << kChshSettingLabels[k] << ")" << std::string(6 - std::string(kChshSettingLabels[k]).size(), ' ')
        << format_g12(e.correlation[k]) << " +- " << format_g12(e.correlation_error[k]) << "\n";
  out << "S         " << format_g12(e.S) << " +- " << format_g12(e.S_error) << "\n"
      << "local hidden-variable bound: S <= 2; quantum maximum 2*sqrt(2) = " << format_g12(2.0 * std::sqrt(2.0)) << "\n";
  return out.str();
}

}  // namespace bwsim
