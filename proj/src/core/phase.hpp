// Canonical phase arithmetic: every angle the library stores lives in [-pi, pi).
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace holo {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Map an arbitrary angle onto the canonical interval [-pi, pi).
/// The upper endpoint folds onto the lower one, so canonical_phase(pi) == -pi.
double canonical_phase(double angle) noexcept;

/// Canonicalize a whole buffer in place. Counts as one canonicalization pass
/// regardless of the buffer length (see canonicalize_pass_count).
void canonicalize(std::span<double> angles) noexcept;

/// Number of bulk canonicalization passes performed by this thread so far.
/// Intended for tests that pin how often hot paths re-normalize.
std::uint64_t canonicalize_pass_count() noexcept;

/// Reset the per-thread pass counter (test helper).
void reset_canonicalize_pass_count() noexcept;

/// Shortest signed angular distance from a to b, in [-pi, pi).
double phase_distance(double a, double b) noexcept;

}  // namespace holo
