#include <cmath>
#include <cstring>
#include <string>

#include "bwsim/bwsim.h"
#include "doctest.h"

namespace {

std::string config_path(const char* name) { return std::string(BWSIM_CONFIG_DIR) + "/" + name; }

struct Config {
  bwsim_config* p = nullptr;
  explicit Config(const char* name) { REQUIRE(bwsim_config_load(config_path(name).c_str(), &p) == BWSIM_OK); }
  ~Config() { bwsim_config_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  bwsim_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(bwsim_version()) > 0);
  CHECK(std::string(bwsim_status_name(BWSIM_ERR_INFEASIBLE)) != std::string(bwsim_status_name(BWSIM_OK)));
}

TEST_CASE("error reporting") {
  bwsim_config* cfg = nullptr;
  CHECK(bwsim_config_parse("[topology]\nkind = fig9\n", &cfg) == BWSIM_ERR_PARSE);
  CHECK(cfg == nullptr);
  CHECK(std::string(bwsim_last_error()).find("line 2") != std::string::npos);

  CHECK(bwsim_config_load("/nonexistent/x.ini", &cfg) == BWSIM_ERR_IO);
  CHECK(bwsim_config_load(nullptr, &cfg) == BWSIM_ERR_ARGUMENT);
  CHECK(bwsim_run(nullptr, nullptr) == BWSIM_ERR_ARGUMENT);

  double t = 0, x = 0;
  CHECK(bwsim_boost(0.0, 1.0, bwsim_speed_of_light(), &t, &x) == BWSIM_ERR_DOMAIN);
  CHECK(bwsim_parse_time("20 ns", &t) == BWSIM_OK);
  CHECK(t == doctest::Approx(20e-9));
  CHECK(bwsim_parse_time("20", &t) == BWSIM_ERR_PARSE);
}

TEST_CASE("config handles") {
  Config cfg("fig2.ini");
  bwsim_config* copy = nullptr;
  REQUIRE(bwsim_config_clone(cfg.p, &copy) == BWSIM_OK);
  int equal = 0;
  CHECK(bwsim_config_equal(cfg.p, copy, &equal) == BWSIM_OK);
  CHECK(equal == 1);

  CHECK(bwsim_config_set_seed(copy, 99) == BWSIM_OK);
  CHECK(bwsim_config_set_trials(copy, 1234) == BWSIM_OK);
  std::uint64_t v = 0;
  CHECK(bwsim_config_get_seed(copy, &v) == BWSIM_OK);
  CHECK(v == 99);
  CHECK(bwsim_config_get_trials(copy, &v) == BWSIM_OK);
  CHECK(v == 1234);
  CHECK(bwsim_config_equal(cfg.p, copy, &equal) == BWSIM_OK);
  CHECK(equal == 0);

  char* text = nullptr;
  REQUIRE(bwsim_config_dump(cfg.p, &text) == BWSIM_OK);
  bwsim_config* reparsed = nullptr;
  REQUIRE(bwsim_config_parse(text, &reparsed) == BWSIM_OK);
  bwsim_string_free(text);
  CHECK(bwsim_config_equal(cfg.p, reparsed, &equal) == BWSIM_OK);
  CHECK(equal == 1);
  std::uint64_t d1 = 0, d2 = 0;
  CHECK(bwsim_config_digest(cfg.p, &d1) == BWSIM_OK);
  CHECK(bwsim_config_digest(reparsed, &d2) == BWSIM_OK);
  CHECK(d1 == d2);
  bwsim_config_free(reparsed);
  bwsim_config_free(copy);
}

TEST_CASE("plan and frames") {
  Config good("fig2.ini");
  bwsim_arm_plan plans[2];
  size_t n = 0;
  char* text = nullptr;
  CHECK(bwsim_plan(good.p, -1.0, plans, 2, &n, &text, nullptr) == BWSIM_OK);
  CHECK(n == 2);
  CHECK(plans[0].feasible == 1);
  CHECK(plans[0].y_lower == doctest::Approx(2.99792458));
  CHECK(plans[0].oracle_disagreements == 0);
  CHECK(take(text).find("arm 1") != std::string::npos);

  Config bad("plan_infeasible.ini");
  CHECK(bwsim_plan(bad.p, -1.0, plans, 2, &n, nullptr, nullptr) == BWSIM_ERR_INFEASIBLE);
  CHECK(plans[0].feasible == 0);

  bwsim_frames_result fr{};
  const double td = 50.3e-9, tc = 50e-9;  // 0.3 ns lead over a 0.5 ns transit
  CHECK(bwsim_frames(good.p, &td, &tc, &tc, &fr, nullptr, nullptr) == BWSIM_OK);
  CHECK(fr.own_frame_exists == 1);
  CHECK(fr.own_threshold_c == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(fr.far_threshold_c <= fr.own_threshold_c);
}

TEST_CASE("run, summary and CSV") {
  Config cfg("single_cell.ini");
  REQUIRE(bwsim_config_set_trials(cfg.p, 20000) == BWSIM_OK);
  REQUIRE(bwsim_config_set_threads(cfg.p, 2) == BWSIM_OK);
  bwsim_summary* s = nullptr;
  REQUIRE(bwsim_run(cfg.p, &s) == BWSIM_OK);
  std::uint64_t counts[4], kept = 0, discarded = 0;
  CHECK(bwsim_summary_counts(s, counts, &kept, &discarded) == BWSIM_OK);
  CHECK(counts[0] + counts[1] + counts[2] + counts[3] == kept);
  CHECK(kept == 20000);
  double p = 0, se = 0;
  CHECK(bwsim_summary_probability(s, BWSIM_TT, &p, &se) == BWSIM_OK);
  CHECK(std::abs(p - bwsim_appendix_p21(std::acos(-1.0) / 6)) < 4 * se);
  CHECK(bwsim_summary_probability(s, 7, &p, &se) == BWSIM_ERR_ARGUMENT);
  char* csv = nullptr;
  CHECK(bwsim_summary_csv(s, &csv) == BWSIM_OK);
  const std::string a = take(csv);
  bwsim_summary_free(s);

  REQUIRE(bwsim_config_set_threads(cfg.p, 1) == BWSIM_OK);
  REQUIRE(bwsim_run(cfg.p, &s) == BWSIM_OK);
  CHECK(bwsim_summary_csv(s, &csv) == BWSIM_OK);
  CHECK(take(csv) == a);
  bwsim_summary_free(s);
}

TEST_CASE("scan and chsh") {
  Config cfg("single_cell.ini");
  REQUIRE(bwsim_config_set_trials(cfg.p, 5000) == BWSIM_OK);
  char* csv = nullptr;
  CHECK(bwsim_scan(cfg.p, 0.0, 1.0, 3, &csv) == BWSIM_OK);
  CHECK(take(csv).starts_with("theta_rad,p21_estimate,stderr,p21_analytic\n"));
  CHECK(bwsim_scan(cfg.p, 0.0, 1.0, 1, &csv) == BWSIM_ERR_ARGUMENT);

  Config chsh("chsh.ini");
  REQUIRE(bwsim_config_set_trials(chsh.p, 50000) == BWSIM_OK);
  const double pi = std::acos(-1.0);
  const double angles[4] = {0.0, pi / 4, pi / 8, 3 * pi / 8};
  double S = 0, err = 0;
  CHECK(bwsim_chsh(chsh.p, angles, &S, &err, nullptr, nullptr) == BWSIM_OK);
  CHECK(std::abs(S - 2 * std::sqrt(2.0)) < 5 * err);
}

TEST_CASE("physics helpers") {
  double t = 0, x = 0;
  CHECK(bwsim_boost(0.0, 1.0, 0.6 * bwsim_speed_of_light(), &t, &x) == BWSIM_OK);
  CHECK(t == doctest::Approx(-2.5017307139861402e-09).epsilon(1e-12));
  CHECK(bwsim_interval_class(0, 0, 1, 0) == BWSIM_TIMELIKE);
  CHECK(bwsim_interval_class(0, 0, 0, 1) == BWSIM_SPACELIKE);
  double lo = 0, hi = 0;
  int nonempty = 0;
  CHECK(bwsim_y_window(20e-9, 0.5e-9, 2e-9, 20e-9, &lo, &hi, &nonempty) == BWSIM_OK);
  CHECK(nonempty == 1);
  CHECK(hi == doctest::Approx(3.147820809));
  CHECK(bwsim_y_window(20e-9, 0.5e-9, 3e-9, 2e-9, &lo, &hi, &nonempty) == BWSIM_ERR_DOMAIN);
  CHECK(bwsim_feasible(20e-9, 0.5e-9, 0.1) == 1);
  CHECK(bwsim_feasible(20e-9, 1e-9, 0.1) == 0);
  double p = 0;
  CHECK(bwsim_joint_prob(0.3, 1.1, BWSIM_TT, &p) == BWSIM_OK);
  CHECK(p == doctest::Approx(0.2572998805753221));
}
