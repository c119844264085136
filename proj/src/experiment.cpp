#include "bwsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bwsim/errors.hpp"
#include "bwsim/lorentz.hpp"

namespace bwsim {

namespace {

const Element& unique_element(const ArmLayout& arm, ElementKind kind) {
  auto it = std::find_if(arm.elements.begin(), arm.elements.end(), [kind](const Element& e) { return e.kind == kind; });
  if (it == arm.elements.end()) throw ConfigError(std::string("arm has no ") + to_string(kind));
  return *it;
}

void validate_arm(const ArmLayout& arm, int index) {
  const std::string where = "arm " + std::to_string(index) + ": ";
  if (arm.elements.empty()) throw ConfigError(where + "no elements");
  double previous = 0.0;
  int polarizers = 0;
  int detectors = 0;
  for (const Element& e : arm.elements) {
    if (!std::isfinite(e.position) || !(e.position > previous))
      throw ConfigError(where + "element positions must be positive and strictly increasing");
    previous = e.position;
    if (e.kind == ElementKind::Detour) {
      if (!std::isfinite(e.height) || e.height < 0.0) throw ConfigError(where + "detour height must be >= 0");
    } else if (e.height != 0.0) {
      throw ConfigError(where + "only detours carry a height");
    }
    polarizers += e.kind == ElementKind::Polarizer;
    detectors += e.kind == ElementKind::Detector;
  }
  if (polarizers != 1) throw ConfigError(where + "exactly one polarizer required");
  if (detectors != 1 || arm.elements.back().kind != ElementKind::Detector)
    throw ConfigError(where + "must terminate in exactly one detector pair");
  try {
    arm.schedule.validate();
  } catch (const DomainError& e) {
    throw ConfigError(where + e.what());
  }
  if (!std::isfinite(arm.polarizer_angle)) throw ConfigError(where + "polarizer angle must be finite");
}

}  // namespace

const Element& ArmLayout::polarizer() const { return unique_element(*this, ElementKind::Polarizer); }
const Element& ArmLayout::detector() const { return unique_element(*this, ElementKind::Detector); }

bool ArmLayout::has_cell() const noexcept {
  return std::any_of(elements.begin(), elements.end(), [](const Element& e) { return e.kind == ElementKind::Cell; });
}

double ArmLayout::path_length_to(double position) const noexcept {
  double length = position;
  for (const Element& e : elements)
    if (e.kind == ElementKind::Detour && e.position < position) length += 2.0 * e.height;
  return length;
}

void ExperimentConfig::validate() const {
  validate_arm(arms[0], 1);
  validate_arm(arms[1], 2);
  if (!std::isfinite(preferred_frame_velocity) || std::abs(preferred_frame_velocity) >= kSpeedOfLight)
    throw ConfigError("preferred frame velocity must satisfy |v| < c");
  if (tie_break_arm != 1 && tie_break_arm != 2) throw ConfigError("tie break must name arm 1 or 2");
  if (run.trials < 1) throw ConfigError("trial count must be at least 1");
  if (run.discard_fraction && !(*run.discard_fraction >= 0.0 && *run.discard_fraction <= 1.0))
    throw ConfigError("discard fraction must lie in [0, 1]");
}

std::array<std::vector<Element>, 2> preset_elements(Topology topology, const PresetGeometry& g) {
  if (topology == Topology::Custom) throw ConfigError("custom topology has no preset layout");
  const double cell = g.cell_distance;
  const double detector = g.detector_distance;
  const double polarizer = g.polarizer_distance > 0.0 ? g.polarizer_distance : 0.5 * (cell + detector);
  if (!(cell > 0.0 && cell < polarizer && polarizer < detector))
    throw ConfigError("preset geometry requires 0 < cell < polarizer < detector distance");

  double detour = g.detour_position;
  if (detour <= 0.0) detour = g.detour_after_polarizer ? 0.5 * (polarizer + detector) : 0.5 * (cell + polarizer);

  auto arm = [&](bool with_detour, double height) {
    std::vector<Element> e{{ElementKind::Cell, cell, 0.0}};
    if (with_detour && !g.detour_after_polarizer) e.push_back({ElementKind::Detour, detour, height});
    e.push_back({ElementKind::Polarizer, polarizer, 0.0});
    if (with_detour && g.detour_after_polarizer) e.push_back({ElementKind::Detour, detour, height});
    e.push_back({ElementKind::Detector, detector, 0.0});
    return e;
  };

  switch (topology) {
    case Topology::Fig1Symmetric:
      return {arm(false, 0.0), arm(false, 0.0)};
    case Topology::Fig2SymmetricDetours:
      return {arm(true, g.detour_height[0]), arm(true, g.detour_height[1])};
    case Topology::Fig3Asymmetric: {
      const double source_detour = g.source_detour_position > 0.0 ? g.source_detour_position : 0.5 * cell;
      std::vector<Element> far{{ElementKind::Detour, source_detour, g.source_detour_height},
                               {ElementKind::Polarizer, polarizer, 0.0},
                               {ElementKind::Detector, detector, 0.0}};
      return {arm(true, g.detour_height[0]), std::move(far)};
    }
    case Topology::Custom:
      break;
  }
  throw ConfigError("unknown topology");
}

const char* to_string(Topology t) noexcept {
  switch (t) {
    case Topology::Fig1Symmetric: return "fig1";
    case Topology::Fig2SymmetricDetours: return "fig2";
    case Topology::Fig3Asymmetric: return "fig3";
    case Topology::Custom: return "custom";
  }
  return "?";
}

const char* to_string(ElementKind k) noexcept {
  switch (k) {
    case ElementKind::Cell: return "cell";
    case ElementKind::Detour: return "detour";
    case ElementKind::Polarizer: return "polarizer";
    case ElementKind::Detector: return "detector";
  }
  return "?";
}

const char* to_string(ModelKind m) noexcept { return m == ModelKind::BWave ? "bwave" : "qm"; }
const char* to_string(TriggerPoint t) noexcept { return t == TriggerPoint::Polarizer ? "polarizer" : "detector"; }
const char* to_string(EmissionLaw e) noexcept { return e == EmissionLaw::Synchronized ? "synchronized" : "uniform"; }

const char* to_string(SyncMode s) noexcept {
  switch (s) {
    case SyncMode::Inactivated: return "inactivated";
    case SyncMode::Activated: return "activated";
    case SyncMode::Alternate: return "alternate";
  }
  return "?";
}

const char* to_string(CellDrive d) noexcept {
  switch (d) {
    case CellDrive::Periodic: return "periodic";
    case CellDrive::AlwaysActivated: return "on";
    case CellDrive::AlwaysInactivated: return "off";
  }
  return "?";
}

}  // namespace bwsim
