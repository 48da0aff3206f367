// Deterministic random number generation.
//
// std::mt19937_64 has a bit-exact, standard-specified output sequence, but the
// standard *distributions* do not, so this header pairs the engine with
// hand-rolled samplers. Every draw is reproducible across platforms and
// compilers given the same (seed, stream) pair.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace holo {

/// Mix a 64-bit value through the splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derive a child seed from a base seed and a stream tag, so independent
/// consumers (dataset split, embedding init, evaluation trials, ...) never
/// share a sequence even when the user picks small adjacent seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Raw 64 engine bits.
  std::uint64_t bits() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller (both halves used).
  double normal();

  /// Normal with the given mean and standard deviation.
  double normal(double mean, double stddev);

  /// Uniform integer in [0, n), n > 0. Debiased (Lemire rejection).
  std::uint64_t uniform_int(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace holo
