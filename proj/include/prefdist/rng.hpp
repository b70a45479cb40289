#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace prefdist {

/// SplitMix64 finalizer; used to derive well-separated seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seeded pseudorandom stream with derivable independent substreams.
///
/// Variates are produced from the raw 64-bit engine output with fixed
/// formulas (not the std distributions), so streams are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent stream keyed by (seed, index). Does not advance this stream.
  Rng substream(std::uint64_t index) const noexcept;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform integer in [0, bound).
  std::size_t below(std::size_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace prefdist
