#include <random>

#include "bwsim/errors.hpp"
#include "bwsim/geometry_planner.hpp"
#include "bwsim/lorentz.hpp"
#include "doctest.h"

using namespace bwsim;

namespace {
constexpr double c = kSpeedOfLight;
constexpr double ns = 1e-9;
}

TEST_CASE("detour_transit_time") {
  CHECK(detour_transit_time(4 * ns, 0.0) == 4 * ns);
  CHECK(detour_transit_time(1 * ns, 3.0) == doctest::Approx(2.101384571188912e-08).epsilon(1e-12));
  CHECK(detour_transit_time(0.0, c * ns / 2.0) == doctest::Approx(1 * ns).epsilon(1e-15));
}

TEST_CASE("y_window: synchronized emission reproduces the fresh-mode bounds") {
  const double dt = 20 * ns, tf = 2 * ns;
  const HeightWindow w = y_window(dt, tf, dt, dt);
  CHECK(w.lower == doctest::Approx(c * dt / 2.0).epsilon(1e-15));
  CHECK(w.upper == doctest::Approx(c * dt - c * tf).epsilon(1e-15));
}

TEST_CASE("y_window: compromise case at dt = 20 ns, t_f = 0.5 ns") {
  const HeightWindow w = y_window(20 * ns, 0.5 * ns, 2 * ns, 20 * ns);
  CHECK(w.lower == doctest::Approx(2.9979245800000003).epsilon(1e-12));
  CHECK(w.upper == doctest::Approx(3.1478208090000006).epsilon(1e-12));
  CHECK_FALSE(w.empty());
  CHECK(w.contains(3.05));
  CHECK_FALSE(w.contains(2.99));
}

TEST_CASE("y_window: degenerate at t_f = dt/20 for the compromise") {
  const double dt = 20 * ns;
  CHECK(y_window(dt, dt / 20.0, dt / 10.0, dt).empty());
  CHECK(y_window_for_fraction(dt, dt / 20.0, 0.1).empty());
}

TEST_CASE("y_window: remaining-time ordering is enforced") {
  CHECK_THROWS_AS(y_window(20 * ns, 0.0, 5 * ns, 4 * ns), DomainError);
  CHECK_THROWS_AS(y_window(20 * ns, 0.0, -1 * ns, 4 * ns), DomainError);
  CHECK_THROWS_AS(y_window(20 * ns, 0.0, 1 * ns, 21 * ns), DomainError);
}

TEST_CASE("feasible") {
  const double dt = 20 * ns;
  CHECK(feasible(dt, dt / 4.0, 1.0));
  CHECK_FALSE(feasible(dt, dt, 1.0));
  CHECK(feasible(dt, 0.999 * ns, 0.1));
  CHECK_FALSE(feasible(dt, 1.0 * ns, 0.1));
  CHECK(max_cell_detector_distance(dt, 0.1) == doctest::Approx(0.29979245800000004).epsilon(1e-12));
  CHECK_FALSE(feasible(dt, 1e-15, 0.0));
  CHECK_FALSE(feasible(dt, 0.0, 0.0));  // boundary equality counts as infeasible
}

TEST_CASE("brute_force_timeline_check examples") {
  const double dt = 20 * ns, tf = 0.5 * ns;
  CHECK(brute_force_timeline_check({dt, tf, c * dt / 2.0 * (1.0 + 1e-6), 1.0}, 0.0));
  CHECK_FALSE(brute_force_timeline_check({dt, tf, c * dt / 2.0 * (1.0 - 1e-6), 1.0}, 0.0));
  for (double s : {0.0, 5 * ns, 19 * ns}) CHECK_FALSE(brute_force_timeline_check({dt, tf, 0.0, 1.0}, s));

  // Window built for q = 0.1; an arrival in the last 5% of the mode is one of
  // the discarded ones and fails at a height near the upper edge.
  const HeightWindow w = y_window_for_fraction(dt, tf, 0.1);
  const double y = w.upper - 1e-3;
  CHECK(brute_force_timeline_check({dt, tf, y, 0.1}, 0.85 * dt));
  CHECK_FALSE(brute_force_timeline_check({dt, tf, y, 0.1}, 0.95 * dt));
  CHECK_THROWS_AS(brute_force_timeline_check({dt, tf, y, 0.1}, dt), DomainError);
}

TEST_CASE("property: closed-form window agrees with the timeline oracle") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int disagreements = 0, accepted = 0;
  for (int i = 0; i < 10000; ++i) {
    const double dt = (1.0 + 99.0 * unit(gen)) * ns;
    const double tf = unit(gen) * dt;
    const double y = unit(gen) * c * dt;
    const double s = unit(gen) * dt;
    const double r = dt - s;
    const bool closed = y_window(dt, tf, r, r).contains(y);
    const bool oracle = brute_force_timeline_check({dt, tf, y, 1.0}, s);
    disagreements += closed != oracle;
    accepted += oracle;
  }
  CHECK(disagreements == 0);
  CHECK(accepted > 100);  // both verdicts exercised
}

TEST_CASE("property: feasibility is equivalent to a non-empty window") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double dt = (1.0 + 99.0 * unit(gen)) * ns;
    const double tf = unit(gen) * dt * 0.6;
    const double q = unit(gen);
    CHECK(feasible(dt, tf, q) == !y_window_for_fraction(dt, tf, q).empty());
  }
}

TEST_CASE("property: window monotonicity and time scaling") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double dt = (1.0 + 99.0 * unit(gen)) * ns;
    const double tf = unit(gen) * dt;
    const double r_min = unit(gen) * dt;
    const double r_max = r_min + unit(gen) * (dt - r_min);
    const HeightWindow w = y_window(dt, tf, r_min, r_max);

    const double r_max2 = r_max + unit(gen) * (dt - r_max);
    CHECK(y_window(dt, tf, r_min, r_max2).lower >= w.lower);
    CHECK(y_window(dt, tf * 1.1 + 1e-12, r_min, r_max).upper < w.upper);

    const double k = 0.1 + 10.0 * unit(gen);
    const HeightWindow scaled = y_window(k * dt, k * tf, k * r_min, std::min(k * r_max, k * dt));
    CHECK(scaled.lower == doctest::Approx(k * w.lower).epsilon(1e-12));
    CHECK(scaled.upper == doctest::Approx(k * w.upper).epsilon(1e-9).scale(c * dt));
  }
}
