#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace braidknots {

/// Seeded random stream. The engine is std::mt19937_64, whose output sequence
/// is fixed by the C++ standard; bounded draws use our own rejection sampling
/// instead of std::uniform_int_distribution (implementation-defined), so a
/// given (seed, label, index) yields the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a named consumer and index (worker, episode,
  /// record ...). Derivation: splitmix64 over seed, FNV-1a(label) and index.
  static Rng derive(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1)); }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace braidknots
