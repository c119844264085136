#pragma once

#include <stdexcept>
#include <string>

namespace bwsim {

/// Argument outside the domain of a physical relation (|v| >= c, r_min > r_max, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent configuration. `line()` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The nonlocal model reached a state the layout should have excluded
/// (e.g. the partner photon was absorbed before the forcing event).
class ModelConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bwsim
