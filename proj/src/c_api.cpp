#include "bwsim/bwsim.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "bwsim/bwave.hpp"
#include "bwsim/config_io.hpp"
#include "bwsim/errors.hpp"
#include "bwsim/lorentz.hpp"
#include "bwsim/qm_reference.hpp"
#include "bwsim/report.hpp"
#include "bwsim/simulator.hpp"

struct bwsim_config {
  bwsim::ExperimentConfig cfg;
};

struct bwsim_summary {
  bwsim::RunSummary summary;
};

namespace {

thread_local std::string g_last_error;

bwsim_status fail(bwsim_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
bwsim_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    return fn();
  } catch (const bwsim::ConfigError& e) {
    return fail(BWSIM_ERR_PARSE, e.what());
  } catch (const bwsim::IoError& e) {
    return fail(BWSIM_ERR_IO, e.what());
  } catch (const bwsim::DomainError& e) {
    return fail(BWSIM_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BWSIM_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(BWSIM_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(BWSIM_ERR_RUNTIME, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void maybe_set(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

bwsim_status null_argument(const char* name) { return fail(BWSIM_ERR_ARGUMENT, std::string(name) + " is null"); }

bwsim_interval to_c(bwsim::IntervalClass c) {
  switch (c) {
    case bwsim::IntervalClass::TimeLike: return BWSIM_TIMELIKE;
    case bwsim::IntervalClass::SpaceLike: return BWSIM_SPACELIKE;
    case bwsim::IntervalClass::LightLike: return BWSIM_LIGHTLIKE;
  }
  return BWSIM_LIGHTLIKE;
}

}  // namespace

extern "C" {

const char* bwsim_version(void) { return "0.1.0"; }

const char* bwsim_last_error(void) { return g_last_error.c_str(); }

const char* bwsim_status_name(bwsim_status status) {
  switch (status) {
    case BWSIM_OK: return "ok";
    case BWSIM_ERR_ARGUMENT: return "invalid argument";
    case BWSIM_ERR_PARSE: return "configuration error";
    case BWSIM_ERR_INFEASIBLE: return "infeasible";
    case BWSIM_ERR_RUNTIME: return "runtime error";
    case BWSIM_ERR_IO: return "I/O error";
    case BWSIM_ERR_DOMAIN: return "domain error";
  }
  return "unknown status";
}

void bwsim_string_free(char* s) { std::free(s); }

bwsim_status bwsim_config_load(const char* path, bwsim_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new bwsim_config{bwsim::load_config(path)};
    return BWSIM_OK;
  });
}

bwsim_status bwsim_config_parse(const char* text, bwsim_config** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new bwsim_config{bwsim::parse_config(text)};
    return BWSIM_OK;
  });
}

bwsim_status bwsim_config_clone(const bwsim_config* cfg, bwsim_config** out) {
  if (!cfg) return null_argument("cfg");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new bwsim_config{*cfg};
    return BWSIM_OK;
  });
}

void bwsim_config_free(bwsim_config* cfg) { delete cfg; }

bwsim_status bwsim_config_dump(const bwsim_config* cfg, char** out_text) {
  if (!cfg) return null_argument("cfg");
  if (!out_text) return null_argument("out_text");
  return guarded([&] {
    *out_text = dup_string(bwsim::dump_config(cfg->cfg));
    return BWSIM_OK;
  });
}

bwsim_status bwsim_config_equal(const bwsim_config* a, const bwsim_config* b, int* out_equal) {
  if (!a || !b) return null_argument("config");
  if (!out_equal) return null_argument("out_equal");
  *out_equal = a->cfg == b->cfg;
  return BWSIM_OK;
}

bwsim_status bwsim_config_digest(const bwsim_config* cfg, uint64_t* out) {
  if (!cfg) return null_argument("cfg");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = bwsim::config_digest(cfg->cfg);
    return BWSIM_OK;
  });
}

bwsim_status bwsim_config_set_model(bwsim_config* cfg, bwsim_model model) {
  if (!cfg) return null_argument("cfg");
  if (model != BWSIM_MODEL_QM && model != BWSIM_MODEL_BWAVE) return fail(BWSIM_ERR_ARGUMENT, "unknown model");
  cfg->cfg.model = model == BWSIM_MODEL_BWAVE ? bwsim::ModelKind::BWave : bwsim::ModelKind::QuantumMechanics;
  return BWSIM_OK;
}

bwsim_status bwsim_config_set_trials(bwsim_config* cfg, uint64_t trials) {
  if (!cfg) return null_argument("cfg");
  if (trials < 1) return fail(BWSIM_ERR_ARGUMENT, "trial count must be at least 1");
  cfg->cfg.run.trials = trials;
  return BWSIM_OK;
}

bwsim_status bwsim_config_set_seed(bwsim_config* cfg, uint64_t seed) {
  if (!cfg) return null_argument("cfg");
  cfg->cfg.run.seed = seed;
  return BWSIM_OK;
}

bwsim_status bwsim_config_set_threads(bwsim_config* cfg, unsigned threads) {
  if (!cfg) return null_argument("cfg");
  cfg->cfg.run.threads = threads;
  return BWSIM_OK;
}

bwsim_status bwsim_config_get_trials(const bwsim_config* cfg, uint64_t* out) {
  if (!cfg || !out) return null_argument("argument");
  *out = cfg->cfg.run.trials;
  return BWSIM_OK;
}

bwsim_status bwsim_config_get_seed(const bwsim_config* cfg, uint64_t* out) {
  if (!cfg || !out) return null_argument("argument");
  *out = cfg->cfg.run.seed;
  return BWSIM_OK;
}

bwsim_status bwsim_parse_time(const char* text, double* out_seconds) {
  if (!text || !out_seconds) return null_argument("argument");
  return guarded([&] {
    *out_seconds = bwsim::parse_quantity(text, bwsim::Dimension::Time);
    return BWSIM_OK;
  });
}

bwsim_status bwsim_plan(const bwsim_config* cfg, double q, bwsim_arm_plan* plans, size_t capacity, size_t* out_count,
                        char** out_text, char** out_csv) {
  if (!cfg) return null_argument("cfg");
  if (capacity > 0 && !plans) return null_argument("plans");
  return guarded([&] {
    const auto result =
        bwsim::plan_experiment(cfg->cfg, q < 0.0 ? std::nullopt : std::optional<double>(q));
    bool ok = true;
    for (std::size_t i = 0; i < result.size(); ++i) {
      const bwsim::ArmPlan& p = result[i];
      ok = ok && p.ok();
      if (i >= capacity) continue;
      plans[i] = bwsim_arm_plan{p.arm,
                                p.delta_t,
                                p.t_f,
                                p.q,
                                p.window.lower,
                                p.window.upper,
                                p.feasible,
                                p.max_cell_detector_distance,
                                p.y.has_value(),
                                p.y.value_or(0.0),
                                p.y_in_window,
                                p.oracle_samples,
                                p.oracle_passes,
                                p.oracle_disagreements};
    }
    if (out_count) *out_count = result.size();
    maybe_set(out_text, bwsim::plan_text(result));
    maybe_set(out_csv, bwsim::plan_csv(result));
    return ok ? BWSIM_OK : fail(BWSIM_ERR_INFEASIBLE, "timing constraints cannot be satisfied");
  });
}

bwsim_status bwsim_frames(const bwsim_config* cfg, const double* t_detect, const double* t_change_own,
                          const double* t_change_far, bwsim_frames_result* out, char** out_text, char** out_csv) {
  if (!cfg) return null_argument("cfg");
  auto opt = [](const double* p) { return p ? std::optional<double>(*p) : std::nullopt; };
  return guarded([&] {
    const bwsim::FramesReport r =
        bwsim::analyze_frames(cfg->cfg, opt(t_detect), opt(t_change_own), opt(t_change_far));
    if (out) {
      *out = bwsim_frames_result{r.t_detect,
                                 r.t_change_own,
                                 r.t_change_far,
                                 r.own.fraction_of_c(),
                                 r.own.frame_exists,
                                 r.far.fraction_of_c(),
                                 r.far.frame_exists,
                                 to_c(r.own_pair),
                                 to_c(r.far_pair)};
    }
    maybe_set(out_text, bwsim::frames_text(r));
    maybe_set(out_csv, bwsim::frames_csv(r));
    return BWSIM_OK;
  });
}

bwsim_status bwsim_run(const bwsim_config* cfg, bwsim_summary** out) {
  if (!cfg) return null_argument("cfg");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new bwsim_summary{bwsim::run(cfg->cfg)};
    return BWSIM_OK;
  });
}

void bwsim_summary_free(bwsim_summary* s) { delete s; }

bwsim_status bwsim_summary_counts(const bwsim_summary* s, uint64_t counts[4], uint64_t* kept, uint64_t* discarded) {
  if (!s) return null_argument("summary");
  if (counts)
    for (int i = 0; i < 4; ++i) counts[i] = s->summary.counts[static_cast<std::size_t>(i)];
  if (kept) *kept = s->summary.kept;
  if (discarded) *discarded = s->summary.discarded;
  return BWSIM_OK;
}

bwsim_status bwsim_summary_probability(const bwsim_summary* s, int outcome, double* p, double* stderr_out) {
  if (!s) return null_argument("summary");
  if (outcome < 0 || outcome > 3) return fail(BWSIM_ERR_ARGUMENT, "outcome must be in [0, 3]");
  if (p) *p = s->summary.probability(outcome);
  if (stderr_out) *stderr_out = s->summary.standard_error(outcome);
  return BWSIM_OK;
}

bwsim_status bwsim_summary_text(const bwsim_summary* s, char** out) {
  if (!s || !out) return null_argument("argument");
  return guarded([&] {
    *out = dup_string(bwsim::summary_text(s->summary));
    return BWSIM_OK;
  });
}

bwsim_status bwsim_summary_csv(const bwsim_summary* s, char** out) {
  if (!s || !out) return null_argument("argument");
  return guarded([&] {
    *out = dup_string(bwsim::summary_csv(s->summary));
    return BWSIM_OK;
  });
}

bwsim_status bwsim_scan(const bwsim_config* cfg, double theta_min, double theta_max, int steps, char** out_csv) {
  if (!cfg || !out_csv) return null_argument("argument");
  if (steps < 2) return fail(BWSIM_ERR_ARGUMENT, "a theta scan needs at least 2 steps");
  return guarded([&] {
    const auto grid = bwsim::theta_grid(theta_min, theta_max, steps);
    const auto rows = bwsim::scan_theta(cfg->cfg, grid, cfg->cfg.run.trials, cfg->cfg.run.seed);
    *out_csv = dup_string(bwsim::scan_csv(rows));
    return BWSIM_OK;
  });
}

bwsim_status bwsim_chsh(const bwsim_config* cfg, const double angles[4], double* out_S, double* out_S_error,
                        char** out_text, char** out_csv) {
  if (!cfg || !angles) return null_argument("argument");
  return guarded([&] {
    const bwsim::ChshAngles a{angles[0], angles[1], angles[2], angles[3]};
    const bwsim::ChshEstimate e = bwsim::estimate_chsh(cfg->cfg, a, cfg->cfg.run.trials, cfg->cfg.run.seed);
    if (out_S) *out_S = e.S;
    if (out_S_error) *out_S_error = e.S_error;
    maybe_set(out_text, bwsim::chsh_text(e, a));
    maybe_set(out_csv, bwsim::chsh_csv(e));
    return BWSIM_OK;
  });
}

double bwsim_speed_of_light(void) { return bwsim::kSpeedOfLight; }

bwsim_status bwsim_boost(double t, double x, double v, double* out_t, double* out_x) {
  if (!out_t || !out_x) return null_argument("output");
  return guarded([&] {
    const bwsim::SpacetimeEvent e = bwsim::boost({t, x}, bwsim::FrameBoost(v));
    *out_t = e.t;
    *out_x = e.x;
    return BWSIM_OK;
  });
}

bwsim_interval bwsim_interval_class(double t1, double x1, double t2, double x2) {
  return to_c(bwsim::interval_class({t1, x1}, {t2, x2}));
}

bwsim_status bwsim_y_window(double delta_t, double t_f, double r_min, double r_max, double* lower, double* upper,
                            int* nonempty) {
  return guarded([&] {
    const bwsim::HeightWindow w = bwsim::y_window(delta_t, t_f, r_min, r_max);
    if (lower) *lower = w.lower;
    if (upper) *upper = w.upper;
    if (nonempty) *nonempty = !w.empty();
    return BWSIM_OK;
  });
}

int bwsim_feasible(double delta_t, double t_f, double q) { return bwsim::feasible(delta_t, t_f, q); }

bwsim_status bwsim_joint_prob(double a, double b, int outcome, double* out) {
  if (!out) return null_argument("out");
  if (outcome < 0 || outcome > 3) return fail(BWSIM_ERR_ARGUMENT, "outcome must be in [0, 3]");
  return guarded([&] {
    *out = bwsim::joint_prob(bwsim::PolarizationAngle(a), bwsim::PolarizationAngle(b),
                             bwsim::outcome_from_index(outcome));
    return BWSIM_OK;
  });
}

double bwsim_appendix_p21(double theta) { return bwsim::appendix_P21(theta); }

}  // extern "C"
