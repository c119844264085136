#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "bwsim/experiment.hpp"

// Sectioned plain-text experiment description:
//
//   # comment
//   [section]
//   key = value        # trailing comment
//
// Dimensioned values carry units: s, ms, us, ns, ps for times; m, cm, mm, km
// for lengths; m/s or c for velocities. Angles take rad (default) or deg.
// Unknown sections or keys, duplicate keys and missing units are errors.
// See README.md for the full key list.

namespace bwsim {

enum class Dimension { Time, Length, Angle, Velocity };

/// Parses "<number> <unit>" into SI units. Throws ConfigError.
double parse_quantity(std::string_view text, Dimension dim, int line = 0);

/// Throws ConfigError (with the offending line) on malformed or invalid input.
ExperimentConfig parse_config(std::string_view text);

/// Throws IoError if the file cannot be read, ConfigError otherwise.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form with explicit element lists. parse_config(dump_config(c)) == c.
std::string dump_config(const ExperimentConfig& cfg);

/// FNV-1a hash of the canonical text form, ignoring the thread count.
std::uint64_t config_digest(const ExperimentConfig& cfg);

}  // namespace bwsim
