#pragma once

#include <array>
#include <span>

// Quantum-mechanical predictions for the polarization-entangled pair
// (|V>_2 |H>_1 - |H>_2 |V>_1) / sqrt(2) measured by two-channel polarizers.

namespace bwsim {

inline constexpr double kPi = 3.14159265358979323846;

/// Polarization or analyzer orientation measured from vertical, reduced modulo pi
/// into [0, pi). V = 0, H = pi/2.
class PolarizationAngle {
 public:
  constexpr PolarizationAngle() = default;
  explicit PolarizationAngle(double radians);

  double radians() const noexcept { return rad_; }
  PolarizationAngle rotated(double delta) const { return PolarizationAngle(rad_ + delta); }
  PolarizationAngle orthogonal() const { return rotated(kPi / 2.0); }

  friend bool operator==(const PolarizationAngle&, const PolarizationAngle&) = default;

 private:
  double rad_ = 0.0;
};

/// Output port of a two-channel polarizer. A missing click at the transmitted
/// detector is the Reflected outcome.
enum class Channel { Transmitted, Reflected };

struct JointOutcome {
  Channel arm1 = Channel::Transmitted;
  Channel arm2 = Channel::Transmitted;

  friend bool operator==(const JointOutcome&, const JointOutcome&) = default;
};

/// Outcome index used for count arrays: TT, TR, RT, RR (arm 1 first).
int outcome_index(JointOutcome o) noexcept;
JointOutcome outcome_from_index(int index);
const char* outcome_label(int index);

inline constexpr std::array<JointOutcome, 4> kAllOutcomes{{{Channel::Transmitted, Channel::Transmitted},
                                                            {Channel::Transmitted, Channel::Reflected},
                                                            {Channel::Reflected, Channel::Transmitted},
                                                            {Channel::Reflected, Channel::Reflected}}};

/// P(TT) = P(RR) = sin^2(a - b) / 2, P(TR) = P(RT) = cos^2(a - b) / 2.
double joint_prob(PolarizationAngle a_eff, PolarizationAngle b_eff, JointOutcome o);

/// Probabilities of all four outcomes in outcome_index order.
std::array<double, 4> joint_distribution(PolarizationAngle a_eff, PolarizationAngle b_eff);

/// Analyzer orientation equivalent to `polarizer` preceded by the given
/// polarization rotations. An activated cell contributes -theta to the light,
/// which is the same as turning the analyzer by +theta.
PolarizationAngle effective_angle(PolarizationAngle polarizer, std::span<const double> forward_rotations);

/// E = P(TT) + P(RR) - P(TR) - P(RT) = -cos 2(a - b).
double correlation_E(PolarizationAngle a, PolarizationAngle b);

/// |E(a,b) - E(a,b') + E(a',b) + E(a',b')|.
double chsh_S(PolarizationAngle a, PolarizationAngle a_prime, PolarizationAngle b, PolarizationAngle b_prime);

/// Probability that a photon of definite polarization `state` leaves the
/// analyzer in `channel`: cos^2(state - analyzer) for Transmitted.
double malus(PolarizationAngle state, PolarizationAngle analyzer, Channel channel = Channel::Transmitted);

}  // namespace bwsim
