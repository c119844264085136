#pragma once

#include <cstdint>

namespace bwsim {

enum class CellMode { Inactivated, Activated };

/// How a Pockels cell is driven. Periodic cells alternate every delta_t;
/// the static drives hold one mode forever.
enum class CellDrive { Periodic, AlwaysActivated, AlwaysInactivated };

/// Two-mode square wave. The cell enters the activated mode at `phase` and
/// flips every `delta_t`; intervals are half-open, [boundary, next boundary).
/// An activated cell rotates the polarization of forward-going light by -theta.
struct SwitchSchedule {
  double delta_t = 20e-9;  // s
  double phase = 0.0;      // s
  double theta = 0.0;      // rad
  CellDrive drive = CellDrive::Periodic;

  /// Throws DomainError for non-positive or non-finite delta_t.
  void validate() const;

  bool periodic() const noexcept { return drive == CellDrive::Periodic; }

  /// Index k of the mode interval [phase + k dt, phase + (k+1) dt) containing t.
  /// Times within kBoundarySnap * delta_t below a boundary snap onto it.
  std::int64_t interval_index(double t) const noexcept;
  /// Start of interval k.
  double boundary(std::int64_t k) const noexcept { return phase + static_cast<double>(k) * delta_t; }

  CellMode mode_at(double t) const noexcept;
  /// Time already spent in the current mode; 0 for static drives.
  double elapsed_in_mode(double t) const noexcept;
  /// First boundary strictly after the start of the interval containing t.
  double next_boundary(double t) const noexcept { return boundary(interval_index(t) + 1); }

  friend bool operator==(const SwitchSchedule&, const SwitchSchedule&) = default;
};

inline constexpr double kBoundarySnap = 1e-9;

}  // namespace bwsim
