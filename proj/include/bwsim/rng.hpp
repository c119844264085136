#pragma once

#include <cstdint>
#include <limits>

namespace bwsim {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Random stream for one trial, keyed by (seed, trial index) so that a trial's
/// draws do not depend on which thread runs it or in what order. Satisfies
/// std::uniform_random_bit_generator; the simulator uses uniform() directly
/// because std distributions are not reproducible across standard libraries.
class TrialStream {
 public:
  using result_type = std::uint64_t;

  TrialStream(std::uint64_t seed, std::uint64_t trial_index) noexcept
      : state_(mix64(seed) ^ mix64(trial_index + 0x9E3779B97F4A7C15ULL)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace bwsim
