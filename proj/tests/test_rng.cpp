#include <cmath>
#include <set>
#include <vector>

#include <doctest.h>

#include "core/rng.hpp"

using namespace holo;

TEST_CASE("engine output is the ISO-pinned mt19937_64 sequence") {
  // The standard specifies the 10000th consecutive value of a default-seeded
  // mt19937_64 (seed 5489).
  Rng r(5489);
  std::uint64_t last = 0;
  for (int i = 0; i < 10000; ++i) last = r.bits();
  CHECK(last == 9981545732273789042ULL);
}

TEST_CASE("derive_seed separates streams and indices") {
  const std::uint64_t base = 42;
  CHECK(derive_seed(base, "alpha") == derive_seed(base, "alpha"));
  CHECK(derive_seed(base, "alpha") != derive_seed(base, "beta"));
  CHECK(derive_seed(base, "alpha") != derive_seed(base + 1, "alpha"));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(base, "trial", i));
  CHECK(seen.size() == 100);
  CHECK(derive_seed(base, "trial", 7) == derive_seed(base, "trial", 7));
}

TEST_CASE("uniform01 lies in [0, 1) with a sane mean") {
  Rng r(1);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("uniform respects its bounds") {
  Rng r(2);
  for (int i = 0; i < 1000; ++i) {
    const double v = r.uniform(-3.5, 2.25);
    CHECK(v >= -3.5);
    CHECK(v < 2.25);
  }
}

TEST_CASE("normal has standard moments") {
  Rng r(3);
  const int n = 40000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
  // Scaled variant.
  Rng r2(3);
  Rng r3(3);
  CHECK(r2.normal(2.0, 3.0) == doctest::Approx(2.0 + 3.0 * r3.normal()).epsilon(1e-12));
}

TEST_CASE("uniform_int is bounded, complete, and deterministic") {
  Rng r(4);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = r.uniform_int(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);

  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform_int(1000003) == b.uniform_int(1000003));
  CHECK(Rng(5).uniform_int(1) == 0);
}

TEST_CASE("identical seeds replay identical sequences across draw kinds") {
  Rng a(7), b(7);
  for (int i = 0; i < 50; ++i) {
    CHECK(a.uniform01() == b.uniform01());
    CHECK(a.normal() == b.normal());
    CHECK(a.uniform_int(31) == b.uniform_int(31));
    CHECK(a.uniform(-1.0, 1.0) == b.uniform(-1.0, 1.0));
  }
}
