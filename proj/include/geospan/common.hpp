#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace geospan {

/// Global tolerance discipline: distances are doubles, equality and
/// inequality checks carry a relative tolerance of 1e-9.
inline constexpr double kRelTol = 1e-9;

inline bool nearly_equal(double a, double b, double rtol = kRelTol) {
  return std::fabs(a - b) <= rtol * std::max({std::fabs(a), std::fabs(b), 1.0});
}

/// a <= b up to relative tolerance.
inline bool leq_tol(double a, double b, double rtol = kRelTol) {
  return a <= b + rtol * std::max({std::fabs(a), std::fabs(b), 1.0});
}

/// Deterministic RNG used by every generator. Wraps mt19937_64 with an
/// explicit uint64 -> double mapping so streams do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    // splitmix64; small, fast, and stable across platforms
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0,n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace geospan
