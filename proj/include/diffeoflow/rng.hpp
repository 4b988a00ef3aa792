#pragma once

#include <cstdint>
#include <random>

namespace dfl {

/// Seedable random source with a fixed, platform-independent stream.
///
/// Wraps std::mt19937_64 (fully specified by the standard) and converts raw
/// 64-bit draws to doubles with a fixed mapping, so sequences are
/// bit-identical everywhere. Callers document their draw order; consumers of
/// a seed must not change it without bumping the surrounding file schema.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Rejection-free modulo is fine here: n is
  /// always tiny compared to 2^64 in our uses.
  std::uint64_t uniform_index(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dfl
