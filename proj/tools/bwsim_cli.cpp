// bwsim command-line front end. Talks to the library only through bwsim.h.
//
// Exit codes: 0 success, 1 usage error, 2 configuration error, 3 infeasible
// plan, 4 runtime error, 5 I/O error, 6 domain error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bwsim/bwsim.h"

namespace {

struct ConfigDeleter {
  void operator()(bwsim_config* c) const { bwsim_config_free(c); }
};
struct SummaryDeleter {
  void operator()(bwsim_summary* s) const { bwsim_summary_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { bwsim_string_free(s); }
};
using ConfigPtr = std::unique_ptr<bwsim_config, ConfigDeleter>;
using SummaryPtr = std::unique_ptr<bwsim_summary, SummaryDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

/// Thrown to unwind with an exit status after the message has been printed.
struct Exit {
  int code;
};

void check(bwsim_status status) {
  if (status == BWSIM_OK) return;
  std::cerr << "bwsim: " << bwsim_status_name(status) << ": " << bwsim_last_error() << "\n";
  throw Exit{static_cast<int>(status)};
}

struct CommonOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> threads;
  std::string model;
  bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool simulation) {
  cmd->add_option("-c,--config", o.config, "Experiment configuration file")->required();
  cmd->add_option("-o,--out", o.out, "CSV output path (default: $BWSIM_OUTPUT_DIR/<command>.csv, else stdout)");
  cmd->add_flag("--dump-config", o.dump_config, "Print the canonical configuration and exit");
  if (simulation) {
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--trials", o.trials, "Number of photon pairs (per setting for chsh)");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores, 1 = serial)");
    cmd->add_option("--model", o.model, "Physics model")->check(CLI::IsMember({"qm", "bwave"}));
  }
}

ConfigPtr load(const CommonOptions& o) {
  bwsim_config* raw = nullptr;
  check(bwsim_config_load(o.config.c_str(), &raw));
  ConfigPtr cfg(raw);
  if (o.seed) check(bwsim_config_set_seed(cfg.get(), *o.seed));
  if (o.trials) check(bwsim_config_set_trials(cfg.get(), *o.trials));
  if (o.threads) check(bwsim_config_set_threads(cfg.get(), *o.threads));
  if (!o.model.empty()) check(bwsim_config_set_model(cfg.get(), o.model == "bwave" ? BWSIM_MODEL_BWAVE : BWSIM_MODEL_QM));
  return cfg;
}

bool dump_if_requested(const CommonOptions& o, const bwsim_config* cfg) {
  if (!o.dump_config) return false;
  char* text = nullptr;
  check(bwsim_config_dump(cfg, &text));
  StringPtr owned(text);
  std::cout << owned.get();
  return true;
}

std::optional<std::filesystem::path> csv_destination(const CommonOptions& o, const std::string& command) {
  if (!o.out.empty()) return std::filesystem::path(o.out);
  if (const char* dir = std::getenv("BWSIM_OUTPUT_DIR"); dir && *dir)
    return std::filesystem::path(dir) / (command + ".csv");
  return std::nullopt;
}

void write_file(const std::filesystem::path& path, const char* text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "bwsim: I/O error: cannot write '" << path.string() << "'\n";
    throw Exit{BWSIM_ERR_IO};
  }
}

/// Report text goes to stdout unless the CSV has nowhere else to go.
void emit(const CommonOptions& o, const std::string& command, const char* text, const char* csv) {
  if (auto dest = csv_destination(o, command)) {
    std::cout << text;
    write_file(*dest, csv);
    std::cout << "wrote " << dest->string() << "\n";
  } else {
    std::cerr << text;
    std::cout << csv;
  }
}

double parse_time_flag(const std::string& s) {
  double v = 0.0;
  check(bwsim_parse_time(s.c_str(), &v));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon EPR experiments with switched analyzers: quantum mechanics vs the B-wave model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bwsim_version());

  CommonOptions plan_opts, frames_opts, sim_opts, scan_opts, chsh_opts;

  auto* plan = app.add_subcommand("plan", "Detour-height window and feasibility of the switching scheme");
  add_common(plan, plan_opts, false);
  double plan_q = -1.0;
  plan->add_option("-q,--discard-fraction", plan_q, "Override the discard fraction q")->check(CLI::Range(0.0, 1.0));

  auto* frames = app.add_subcommand("frames", "Frame velocities that reverse detection and switch-change order");
  add_common(frames, frames_opts, false);
  std::string t_bar, t_c1, t_c2;
  frames->add_option("--t-bar", t_bar, "Detection time, e.g. '30 ns' (default: from the timeline)");
  frames->add_option("--t-c1", t_c1, "Completion time of the arm-1 cell change");
  frames->add_option("--t-c2", t_c2, "Completion time of the arm-2 cell change");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the configured experiment");
  add_common(simulate, sim_opts, true);

  auto* scan = app.add_subcommand("scan", "Sweep the arm-1 cell rotation theta");
  add_common(scan, scan_opts, true);
  double theta_min = 0.0, theta_max = 1.5707963267948966;
  int steps = 7;
  scan->add_option("--theta-min", theta_min, "First theta (rad)");
  scan->add_option("--theta-max", theta_max, "Last theta (rad)");
  scan->add_option("--steps", steps, "Number of theta values (>= 2)");

  auto* chsh = app.add_subcommand("chsh", "Estimate the CHSH statistic");
  add_common(chsh, chsh_opts, true);
  std::vector<double> angles{0.0, 0.7853981633974483, 0.39269908169872414, 1.1780972450961724};
  chsh->add_option("--angles", angles, "a a' b b' in radians")->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return BWSIM_ERR_ARGUMENT;
  }

  try {
    if (*plan) {
      ConfigPtr cfg = load(plan_opts);
      if (dump_if_requested(plan_opts, cfg.get())) return 0;
      char* text = nullptr;
      char* csv = nullptr;
      size_t count = 0;
      const bwsim_status status = bwsim_plan(cfg.get(), plan_q, nullptr, 0, &count, &text, &csv);
      StringPtr t(text), c(csv);
      if (status != BWSIM_OK && status != BWSIM_ERR_INFEASIBLE) check(status);
      std::cout << t.get();
      if (auto dest = csv_destination(plan_opts, "plan")) write_file(*dest, c.get());
      return status;
    }
    if (*frames) {
      ConfigPtr cfg = load(frames_opts);
      if (dump_if_requested(frames_opts, cfg.get())) return 0;
      std::optional<double> tb, tc1, tc2;
      if (!t_bar.empty()) tb = parse_time_flag(t_bar);
      if (!t_c1.empty()) tc1 = parse_time_flag(t_c1);
      if (!t_c2.empty()) tc2 = parse_time_flag(t_c2);
      char* text = nullptr;
      char* csv = nullptr;
      check(bwsim_frames(cfg.get(), tb ? &*tb : nullptr, tc1 ? &*tc1 : nullptr, tc2 ? &*tc2 : nullptr, nullptr, &text,
                         &csv));
      StringPtr t(text), c(csv);
      std::cout << t.get();
      if (auto dest = csv_destination(frames_opts, "frames")) write_file(*dest, c.get());
      return 0;
    }
    if (*simulate) {
      ConfigPtr cfg = load(sim_opts);
      if (dump_if_requested(sim_opts, cfg.get())) return 0;
      bwsim_summary* raw = nullptr;
      check(bwsim_run(cfg.get(), &raw));
      SummaryPtr summary(raw);
      char* text = nullptr;
      char* csv = nullptr;
      check(bwsim_summary_text(summary.get(), &text));
      StringPtr t(text);
      check(bwsim_summary_csv(summary.get(), &csv));
      StringPtr c(csv);
      emit(sim_opts, "simulate", t.get(), c.get());
      return 0;
    }
    if (*scan) {
      ConfigPtr cfg = load(scan_opts);
      if (dump_if_requested(scan_opts, cfg.get())) return 0;
      if (steps < 2) {
        std::cerr << "bwsim: --steps must be at least 2\n";
        return BWSIM_ERR_ARGUMENT;
      }
      char* csv = nullptr;
      check(bwsim_scan(cfg.get(), theta_min, theta_max, steps, &csv));
      StringPtr c(csv);
      emit(scan_opts, "scan", "", c.get());
      return 0;
    }
    if (*chsh) {
      ConfigPtr cfg = load(chsh_opts);
      if (dump_if_requested(chsh_opts, cfg.get())) return 0;
      char* text = nullptr;
      char* csv = nullptr;
      check(bwsim_chsh(cfg.get(), angles.data(), nullptr, nullptr, &text, &csv));
      StringPtr t(text), c(csv);
      emit(chsh_opts, "chsh", t.get(), c.get());
      return 0;
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return BWSIM_ERR_ARGUMENT;
}
