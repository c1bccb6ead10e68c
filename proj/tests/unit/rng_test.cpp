#include <doctest.h>

#include <cmath>

#include "npsense/rng.hpp"

using namespace npsense;

TEST_CASE("counter rng is a pure function of its key") {
  CounterRng a(123, RngStream::H0, 7);
  CounterRng b(123, RngStream::H0, 7);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(123, RngStream::H0, 8);
  CounterRng d(123, RngStream::H1, 7);
  CounterRng e(124, RngStream::H0, 7);
  CounterRng base(123, RngStream::H0, 7);
  const std::uint64_t first = base.next_u64();
  CHECK(c.next_u64() != first);
  CHECK(d.next_u64() != first);
  CHECK(e.next_u64() != first);
}

TEST_CASE("unit draws live in (0, 1] and look uniform") {
  CounterRng rng(99, RngStream::Generic, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  const double mean = sum / n;
  const double se = std::sqrt(1.0 / 12.0 / n);
  CHECK(std::abs(mean - 0.5) < 4.0 * se);
}

TEST_CASE("gaussian draws have standard moments") {
  CounterRng rng(7, RngStream::Generic, 3);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}
