// SPDX-License-Identifier: MIT
//
// Counter-based random number generation for reproducible Monte Carlo.
//
// Every trial owns an independent stream keyed by (seed, stream index), so a
// simulation produces bit-identical results regardless of how trials are
// scheduled across threads.  The generator is SplitMix64 (Steele, Lea &
// Flood, OOPSLA 2014), which passes BigCrush for this keying and is fully
// portable: the only floating-point ops are multiplies/adds with exactly
// representable scale factors plus libm calls evaluated on the same machine.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fri {

namespace detail {
/// SplitMix64 finalizer: bijective 64-bit mix with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// One independent random stream.  Cheap to construct; make one per trial.
class TrialRng {
public:
  /// Streams with equal (seed, stream) are identical; any difference in
  /// either key decorrelates the sequences.
  TrialRng(std::uint64_t seed, std::uint64_t stream)
      : state_(detail::mix64(seed) ^ detail::mix64(detail::mix64(stream) + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0, 1): never returns 0 or 1, so it is
  /// safe inside logs.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller.  Both outputs of each transform are
  /// used, so consecutive calls cost one (log, sqrt, sincos) per two draws.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fri
