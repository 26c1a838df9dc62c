#pragma once

#include <cmath>
#include <cstdint>

namespace qpol {

/// Address of one independent random stream inside a run.
///
/// (angle_index, block_index) identify a work unit of the per-angle photon
/// loop; lane separates draw purposes inside the unit (0 = source,
/// 1 = first analyzer, 2 = second analyzer).
struct StreamLabel {
  std::uint32_t angle_index = 0;
  std::uint32_t block_index = 0;
  std::uint32_t lane = 0;
};

/// Deterministic splittable pseudorandom stream.
///
/// Every (master_seed, label) pair keys its own sequence; identical keys
/// reproduce identical draws on any platform and any thread schedule. A
/// stream is single-owner mutable state: construct one per work unit and
/// never share it between threads.
class RandomStream {
public:
  RandomStream(std::uint64_t master_seed, StreamLabel label) {
    std::uint64_t k = mix(master_seed ^ 0xD1B54A32D192ED03ull);
    k = mix(k + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(label.angle_index) + 1));
    k = mix(k + 0xC2B2AE3D27D4EB4Full * (static_cast<std::uint64_t>(label.block_index) + 1));
    k = mix(k + 0x165667B19E3779F9ull * (static_cast<std::uint64_t>(label.lane) + 1));
    state_ = k;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;  // splitmix64 increment
    return mix(state_);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform01() - 1.0; }

  /// Normal draw with mean 0 and the given sigma. Box-Muller; consumes
  /// exactly two uniforms so the draw count per call is fixed.
  double normal(double sigma) {
    double u1 = uniform01();
    const double u2 = uniform01();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    constexpr double two_pi = 6.28318530717958647692;
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace qpol
