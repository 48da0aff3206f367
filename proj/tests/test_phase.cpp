#include <cmath>
#include <vector>

#include <doctest.h>

#include "core/phase.hpp"

using namespace holo;

TEST_CASE("canonical_phase maps onto [-pi, pi)") {
  CHECK(canonical_phase(0.0) == 0.0);
  CHECK(canonical_phase(1.25) == 1.25);
  CHECK(canonical_phase(-3.0) == -3.0);
  // Frozen oracle: 4 - 2*pi.
  CHECK(canonical_phase(4.0) == doctest::Approx(-2.2831853071795862).epsilon(1e-15));
  // The interval is right-open: +pi lands on -pi, -pi stays put.
  CHECK(canonical_phase(kPi) == -kPi);
  CHECK(canonical_phase(-kPi) == -kPi);
  CHECK(canonical_phase(3.0 * kPi) == -kPi);

  for (double x : {1e6, -1e6, 12345.678, -9876.543, 7.0 * kPi}) {
    const double c = canonical_phase(x);
    CHECK(c >= -kPi);
    CHECK(c < kPi);
    // c is congruent to x modulo 2*pi.
    CHECK(std::abs(std::remainder(x - c, kTwoPi)) < 1e-6);
  }
}

TEST_CASE("canonical_phase is periodic") {
  for (double base : {0.0, 0.5, -2.0, 3.0}) {
    const double expect = canonical_phase(base);
    for (int k : {-3, -1, 1, 2, 5}) {
      CHECK(canonical_phase(base + k * kTwoPi) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("bulk canonicalize matches scalar and counts passes") {
  std::vector<double> values = {0.0, 4.0, -4.0, kPi, -kPi, 100.0, -100.0, 1.0};
  std::vector<double> expect;
  for (double v : values) expect.push_back(canonical_phase(v));

  reset_canonicalize_pass_count();
  canonicalize(values);
  CHECK(canonicalize_pass_count() == 1);
  canonicalize(values);
  CHECK(canonicalize_pass_count() == 2);

  for (std::size_t i = 0; i < values.size(); ++i) CHECK(values[i] == expect[i]);
  reset_canonicalize_pass_count();
  CHECK(canonicalize_pass_count() == 0);
}

TEST_CASE("phase_distance is the signed shortest angular displacement") {
  CHECK(phase_distance(0.0, 0.0) == 0.0);
  CHECK(phase_distance(1.0, 1.0) == 0.0);
  // Wraps around the circle: from 3.0 the short way to -3.0 is +(2*pi - 6).
  CHECK(phase_distance(3.0, -3.0) == doctest::Approx(0.2831853071795862).epsilon(1e-12));
  CHECK(phase_distance(-3.0, 3.0) == doctest::Approx(-0.2831853071795862).epsilon(1e-12));
  CHECK(phase_distance(kPi - 0.1, -kPi + 0.1) == doctest::Approx(0.2).epsilon(1e-9));
  // Magnitude never exceeds pi; swapping the endpoints flips the sign.
  for (double a : {0.0, 1.0, -2.5, 3.1}) {
    for (double b : {0.3, -1.7, 2.9}) {
      CHECK(std::abs(phase_distance(a, b)) <= kPi);
      CHECK(phase_distance(a, b) == doctest::Approx(-phase_distance(b, a)).epsilon(1e-15));
      CHECK(phase_distance(a, b) == doctest::Approx(canonical_phase(b - a)).epsilon(1e-15));
    }
  }
}
