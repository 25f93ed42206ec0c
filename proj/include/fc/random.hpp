#pragma once

#include <cstdint>
#include <random>

namespace fc {

/// Seedable 64-bit generator with a platform-independent real mapping.
/// std::uniform_real_distribution is implementation-defined, so doubles are
/// built from the top 53 bits directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

/// Stateless counter-based mix; the same (seed, key) always gives the same
/// value regardless of evaluation order.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (key + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double mix_unit(std::uint64_t seed, std::uint64_t key) {
  return static_cast<double>(mix64(seed, key) >> 11) * 0x1.0p-53;
}

}  // namespace fc
