#include "bwsim/lorentz.hpp"

#include <cmath>
#include <string>

#include "bwsim/errors.hpp"

namespace bwsim {

namespace {
constexpr double kC2 = kSpeedOfLight * kSpeedOfLight;

VelocityThreshold threshold(double t_detect, double t_change, double transit) {
  const double lead = t_detect - t_change;
  if (lead <= 0.0) return {0.0, true};
  const double v = kSpeedOfLight * lead / transit;
  return {v, v < kSpeedOfLight};
}
}  // namespace

FrameBoost::FrameBoost(double velocity) : v_(velocity) {
  if (!std::isfinite(velocity) || std::abs(velocity) >= kSpeedOfLight)
    throw DomainError("frame velocity must satisfy |v| < c, got " + std::to_string(velocity) + " m/s");
  const double beta = velocity / kSpeedOfLight;
  gamma_ = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

void LabGeometry::validate() const {
  if (!(cell_distance > 0.0 && cell_distance < detector_distance) || !std::isfinite(detector_distance))
    throw DomainError("lab geometry requires 0 < cell distance < detector distance");
}

SpacetimeEvent boost(const SpacetimeEvent& e, const FrameBoost& b) noexcept {
  const double v = b.velocity();
  return {b.gamma() * (e.t - v * e.x / kC2), b.gamma() * (e.x - v * e.t)};
}

double interval_squared(const SpacetimeEvent& e1, const SpacetimeEvent& e2) noexcept {
  const double cdt = kSpeedOfLight * (e2.t - e1.t);
  const double dx = e2.x - e1.x;
  return (cdt - dx) * (cdt + dx);
}

IntervalClass interval_class(const SpacetimeEvent& e1, const SpacetimeEvent& e2) noexcept {
  const double cdt = kSpeedOfLight * (e2.t - e1.t);
  const double dx = e2.x - e1.x;
  const double s2 = (cdt - dx) * (cdt + dx);
  const double scale = cdt * cdt + dx * dx;
  if (std::abs(s2) <= kLightLikeRelTolerance * scale) return IntervalClass::LightLike;
  return s2 > 0.0 ? IntervalClass::TimeLike : IntervalClass::SpaceLike;
}

Ordering ordering_in_frame(const SpacetimeEvent& e1, const SpacetimeEvent& e2, const FrameBoost& b) noexcept {
  const double dt = boost(e1, b).t - boost(e2, b).t;
  if (std::abs(dt) <= kSimultaneityTolerance) return Ordering::Simultaneous;
  return dt < 0.0 ? Ordering::Before : Ordering::After;
}

VelocityThreshold own_switch_threshold(double t_detect, double t_change, const LabGeometry& g) {
  g.validate();
  return threshold(t_detect, t_change, g.own_transit());
}

VelocityThreshold far_switch_threshold(double t_detect, double t_change, const LabGeometry& g) {
  g.validate();
  return threshold(t_detect, t_change, g.far_transit());
}

}  // namespace bwsim
