#pragma once

// Special-relativistic kinematics on the one-dimensional experiment axis.
// The source sits at x = 0, arm 1 extends along +x and arm 2 along -x.

namespace bwsim {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact

struct SpacetimeEvent {
  double t = 0.0;  // s, lab frame
  double x = 0.0;  // m

  friend bool operator==(const SpacetimeEvent&, const SpacetimeEvent&) = default;
};

/// Standard-configuration boost to a frame moving with velocity v along +x.
class FrameBoost {
 public:
  /// Throws DomainError unless |v| < c and v is finite.
  explicit FrameBoost(double velocity);

  double velocity() const noexcept { return v_; }
  double beta() const noexcept { return v_ / kSpeedOfLight; }
  double gamma() const noexcept { return gamma_; }

 private:
  double v_;
  double gamma_;
};

/// Separation between two lab-frame positions: 0 < cell_distance < detector_distance.
struct LabGeometry {
  double cell_distance = 0.0;      // source to cell, m
  double detector_distance = 0.0;  // source to detector (straight line), m

  /// Throws DomainError unless 0 < cell_distance < detector_distance.
  void validate() const;
  /// Straight-line transit from the cell to the detector on the same arm.
  double own_transit() const noexcept { return (detector_distance - cell_distance) / kSpeedOfLight; }
  /// Transit from the mirrored cell on the other arm to this arm's detector.
  double far_transit() const noexcept { return (detector_distance + cell_distance) / kSpeedOfLight; }
};

enum class IntervalClass { TimeLike, SpaceLike, LightLike };
enum class Ordering { Before, After, Simultaneous };

inline constexpr double kLightLikeRelTolerance = 1e-12;
inline constexpr double kSimultaneityTolerance = 1e-18;  // s

SpacetimeEvent boost(const SpacetimeEvent& e, const FrameBoost& b) noexcept;

/// c^2 dt^2 - dx^2 in m^2.
double interval_squared(const SpacetimeEvent& e1, const SpacetimeEvent& e2) noexcept;

IntervalClass interval_class(const SpacetimeEvent& e1, const SpacetimeEvent& e2) noexcept;

/// Order of e1 relative to e2 as seen in the boosted frame.
Ordering ordering_in_frame(const SpacetimeEvent& e1, const SpacetimeEvent& e2, const FrameBoost& b) noexcept;

/// Minimum frame velocity beyond which a detection is seen before a switch change.
struct VelocityThreshold {
  double velocity = 0.0;     // m/s; may be >= c when no such frame exists
  bool frame_exists = true;  // false when velocity >= c (the events are not space-like)

  double fraction_of_c() const noexcept { return velocity / kSpeedOfLight; }
};

/// Threshold for the detection at the arm-1 detector to precede the change of
/// the arm-1 cell: v > c (t_detect - t_change) / t_f.
VelocityThreshold own_switch_threshold(double t_detect, double t_change, const LabGeometry& g);

/// Same for the mirrored cell on arm 2, with T_f = (x_bar + x) / c.
VelocityThreshold far_switch_threshold(double t_detect, double t_change, const LabGeometry& g);

}  // namespace bwsim
