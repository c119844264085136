#include "bwsim/switch_schedule.hpp"

#include <cmath>

#include "bwsim/errors.hpp"

namespace bwsim {

void SwitchSchedule::validate() const {
  if (!(delta_t > 0.0) || !std::isfinite(delta_t)) throw DomainError("switch mode duration must be positive");
  if (!std::isfinite(phase) || !std::isfinite(theta)) throw DomainError("switch phase and rotation must be finite");
}

std::int64_t SwitchSchedule::interval_index(double t) const noexcept {
  const double u = (t - phase) / delta_t;
  double k = std::floor(u);
  if (u - k > 1.0 - kBoundarySnap) k += 1.0;
  return static_cast<std::int64_t>(k);
}

CellMode SwitchSchedule::mode_at(double t) const noexcept {
  switch (drive) {
    case CellDrive::AlwaysActivated:
      return CellMode::Activated;
    case CellDrive::AlwaysInactivated:
      return CellMode::Inactivated;
    case CellDrive::Periodic:
      break;
  }
  return interval_index(t) % 2 == 0 ? CellMode::Activated : CellMode::Inactivated;
}

double SwitchSchedule::elapsed_in_mode(double t) const noexcept {
  if (!periodic()) return 0.0;
  const double elapsed = t - boundary(interval_index(t));
  return elapsed > kBoundarySnap * delta_t ? elapsed : 0.0;
}

}  // namespace bwsim
