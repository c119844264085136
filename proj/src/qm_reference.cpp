#include "bwsim/qm_reference.hpp"

#include <cmath>
#include <stdexcept>

namespace bwsim {

PolarizationAngle::PolarizationAngle(double radians) {
  double r = std::fmod(radians, kPi);
  if (r < 0.0) r += kPi;
  // fmod of a tiny negative value can round up to exactly pi.
  if (r >= kPi) r = 0.0;
  rad_ = r;
}

int outcome_index(JointOutcome o) noexcept {
  return (o.arm1 == Channel::Reflected ? 2 : 0) + (o.arm2 == Channel::Reflected ? 1 : 0);
}

JointOutcome outcome_from_index(int index) {
  if (index < 0 || index > 3) throw std::out_of_range("outcome index must be in [0, 3]");
  return kAllOutcomes[static_cast<std::size_t>(index)];
}

const char* outcome_label(int index) {
  static constexpr const char* kLabels[] = {"TT", "TR", "RT", "RR"};
  if (index < 0 || index > 3) throw std::out_of_range("outcome index must be in [0, 3]");
  return kLabels[index];
}

double joint_prob(PolarizationAngle a_eff, PolarizationAngle b_eff, JointOutcome o) {
  const double s = std::sin(a_eff.radians() - b_eff.radians());
  const double same = 0.5 * s * s;
  return o.arm1 == o.arm2 ? same : 0.5 - same;
}

std::array<double, 4> joint_distribution(PolarizationAngle a_eff, PolarizationAngle b_eff) {
  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i) p[static_cast<std::size_t>(i)] = joint_prob(a_eff, b_eff, outcome_from_index(i));
  return p;
}

PolarizationAngle effective_angle(PolarizationAngle polarizer, std::span<const double> forward_rotations) {
  double a = polarizer.radians();
  for (double rotation : forward_rotations) a -= rotation;
  return PolarizationAngle(a);
}

double correlation_E(PolarizationAngle a, PolarizationAngle b) {
  return -std::cos(2.0 * (a.radians() - b.radians()));
}

double chsh_S(PolarizationAngle a, PolarizationAngle a_prime, PolarizationAngle b, PolarizationAngle b_prime) {
  return std::abs(correlation_E(a, b) - correlation_E(a, b_prime) + correlation_E(a_prime, b) +
                  correlation_E(a_prime, b_prime));
}

double malus(PolarizationAngle state, PolarizationAngle analyzer, Channel channel) {
  const double d = state.radians() - analyzer.radians();
  const double f = channel == Channel::Transmitted ? std::cos(d) : std::sin(d);
  return f * f;
}

}  // namespace bwsim
