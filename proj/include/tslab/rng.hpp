#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tslab {

/// Seeded generator with platform-independent derived draws.
///
/// std::mt19937_64 is fully specified by the standard; the distributions
/// are not, so bounded integers and unit doubles are derived by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed derived from a base seed and a content label.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

}  // namespace tslab
