#include "core/phase.hpp"

#include <cmath>

namespace holo {
namespace {

thread_local std::uint64_t g_pass_count = 0;

}  // namespace

double canonical_phase(double angle) noexcept {
  // std::remainder returns a value in [-pi, pi]; fold the closed upper
  // endpoint onto -pi so the interval is half-open.
  double r = std::remainder(angle, kTwoPi);
  if (r == kPi) r = -kPi;
  return r;
}

void canonicalize(std::span<double> angles) noexcept {
  ++g_pass_count;
  for (double& a : angles) a = canonical_phase(a);
}

std::uint64_t canonicalize_pass_count() noexcept { return g_pass_count; }

void reset_canonicalize_pass_count() noexcept { g_pass_count = 0; }

double phase_distance(double a, double b) noexcept {
  return canonical_phase(b - a);
}

}  // namespace holo
