#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "npsense/sensing_model.hpp"
#include "test_util.hpp"

using namespace npsense;
using namespace npsense::testutil;

TEST_CASE("parameter validation names the violated rule") {
  CHECK_THROWS_WITH_AS(SensingParams(1.0, 1.0, 1.0, 10), "theta must be < 1",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(SensingParams(-0.1, 1.0, 1.0, 10), "theta must be >= 0",
                       std::invalid_argument);
  CHECK_THROWS_AS(SensingParams(0.1, 0.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(SensingParams(0.1, 1.0, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(SensingParams(0.1, 1.0, 1.0, 0), std::invalid_argument);
  CHECK_NOTHROW(SensingParams(0.0, 1.0, 1.0, 1));
  CHECK_NOTHROW(SensingParams(0.999999, 1e-3, 1e3, 1));
}

TEST_CASE("derived quantities follow their defining formulas") {
  const SensingParams params(0.1, 0.31623, 1.0, 100);
  const DerivedParams d = derive_params(params);
  CHECK(d.signal_power == doctest::Approx(0.31623).epsilon(1e-12));
  CHECK(d.data_power == doctest::Approx(0.9 * 0.31623).epsilon(1e-12));
  CHECK(d.pilot_data_ratio == doctest::Approx(0.1 / 0.9).epsilon(1e-12));
  CHECK(d.data_snr == doctest::Approx(0.9 * 0.31623).epsilon(1e-12));
  // Rounded figures: P 0.31623, data power 0.28460, phi 0.11111, data snr 0.28460.
  CHECK(std::abs(d.data_power - 0.28460) < 1e-5);
  CHECK(std::abs(d.pilot_data_ratio - 0.11111) < 1e-5);

  const SensingParams zero_pilot(0.0, 2.5, 3.0, 4);
  const DerivedParams dz = derive_params(zero_pilot);
  CHECK(dz.pilot_data_ratio == 0.0);
  CHECK(dz.data_power == dz.signal_power);
  CHECK(dz.data_snr == zero_pilot.snr);

  CHECK(SensingParams(0.5, 1.0, 1.0, 1).pilot_data_ratio() == doctest::Approx(1.0));
}

TEST_CASE("theta from a pilot power offset") {
  CHECK(theta_from_pilot_offset_db(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  const double theta11 = theta_from_pilot_offset_db(11.0);
  CHECK(std::abs(theta11 - kThetaFrom11Db) < 1e-12);
  // Defining equation: (1 - theta) / theta = 10^(offset/10).
  CHECK((1.0 - theta11) / theta11 == doctest::Approx(std::pow(10.0, 1.1)).epsilon(1e-12));
  CHECK(theta_from_pilot_offset_db(100.0) < 1e-9);
  CHECK_THROWS_AS(theta_from_pilot_offset_db(std::nan("")), std::invalid_argument);
}

TEST_CASE("pilot sequences are seeded sign patterns at exact power") {
  const SensingParams params(0.1, 1.0, 1.0, 4);  // P = 1
  const PilotSequence pilot = make_pilot(params, 11);
  REQUIRE(pilot.samples.size() == 4);
  for (double x : pilot.samples) {
    CHECK(std::abs(x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x * x == doctest::Approx(params.signal_power()).epsilon(4e-16));
  }

  const PilotSequence again = make_pilot(params, 11);
  CHECK(pilot.samples == again.samples);

  const SensingParams params4(0.1, 4.0, 1.0, 2);  // P = 4
  const PilotSequence amp2 = make_pilot(params4, 5);
  for (double x : amp2.samples) CHECK(std::abs(x) == doctest::Approx(2.0).epsilon(1e-15));

  // Pilot power invariant: mean of squares equals P to machine precision.
  const SensingParams odd(0.25, 0.31622776601683794, 2.0, 257);
  const PilotSequence p = make_pilot(odd, 3);
  double mean_sq = 0.0;
  for (double x : p.samples) mean_sq += x * x;
  mean_sq /= static_cast<double>(p.samples.size());
  CHECK(mean_sq == doctest::Approx(odd.signal_power()).epsilon(1e-14));

  bool differs = false;
  const PilotSequence other = make_pilot(odd, 4);
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    differs = differs || (p.samples[i] != other.samples[i]);
  }
  CHECK(differs);
}

TEST_CASE("synthesis is bit-for-bit deterministic in its seeds") {
  const SensingParams params = params_at(0.1, -5.0, 100);
  const PilotSequence pilot = make_pilot(params, 1);
  CounterRng rng_a(9, RngStream::H1, 42);
  CounterRng rng_b(9, RngStream::H1, 42);
  const ObservationBlock a = synthesize_block(params, pilot, Hypothesis::H1, rng_a);
  const ObservationBlock b = synthesize_block(params, pilot, Hypothesis::H1, rng_b);
  CHECK(a.samples == b.samples);
  CHECK(a.truth == Hypothesis::H1);
}

TEST_CASE("noise-only blocks match N(0, sigma^2) moments") {
  const double sigma2 = 1.7;
  const SensingParams params(0.1, 0.5, sigma2, 100);
  const PilotSequence pilot = make_pilot(params, 1);
  const int blocks = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < blocks; ++t) {
    CounterRng rng(2024, RngStream::H0, static_cast<std::uint64_t>(t));
    const ObservationBlock block = synthesize_block(params, pilot, Hypothesis::H0, rng);
    for (double y : block.samples) {
      sum += y;
      sumsq += y * y;
    }
  }
  const double n = static_cast<double>(blocks) * 100.0;
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 * std::sqrt(sigma2 / n));
  CHECK(std::abs(var - sigma2) < 0.01 * sigma2);
}

TEST_CASE("signal blocks match the H1 distribution") {
  const SensingParams params = params_at(0.1, -5.0, 100);
  const PilotSequence pilot = make_pilot(params, 7);
  const double pilot_gain = std::sqrt(params.theta);
  const double resid_var = params.data_power() + params.noise_variance;
  const int blocks = 100000;

  std::vector<double> pos_sum(100, 0.0);
  double resid_sumsq = 0.0;
  for (int t = 0; t < blocks; ++t) {
    CounterRng rng(77, RngStream::H1, static_cast<std::uint64_t>(t));
    const ObservationBlock block = synthesize_block(params, pilot, Hypothesis::H1, rng);
    for (int i = 0; i < 100; ++i) {
      pos_sum[static_cast<std::size_t>(i)] += block.samples[static_cast<std::size_t>(i)];
      const double r = block.samples[static_cast<std::size_t>(i)] -
                       pilot_gain * pilot.samples[static_cast<std::size_t>(i)];
      resid_sumsq += r * r;
    }
  }
  const double pos_se = std::sqrt(resid_var / blocks);
  for (int i = 0; i < 100; ++i) {
    const double mean_i = pos_sum[static_cast<std::size_t>(i)] / blocks;
    CHECK(std::abs(mean_i - pilot_gain * pilot.samples[static_cast<std::size_t>(i)]) <
          5.0 * pos_se);
  }
  const double pooled_var = resid_sumsq / (static_cast<double>(blocks) * 100.0);
  CHECK(std::abs(pooled_var - resid_var) < 0.01 * resid_var);
}

TEST_CASE("zero pilot fraction reduces H1 to the energy-only model") {
  const SensingParams params(0.0, 0.31622776601683794, 1.0, 100);
  const PilotSequence pilot = make_pilot(params, 1);
  const double want_var = params.signal_power() + params.noise_variance;
  const int blocks = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < blocks; ++t) {
    CounterRng rng(5, RngStream::H1, static_cast<std::uint64_t>(t));
    const ObservationBlock block = synthesize_block(params, pilot, Hypothesis::H1, rng);
    for (double y : block.samples) {
      sum += y;
      sumsq += y * y;
    }
  }
  const double n = static_cast<double>(blocks) * 100.0;
  const double mean = sum / n;
  CHECK(std::abs(mean) < 4.0 * std::sqrt(want_var / n));
  CHECK(std::abs(sumsq / n - mean * mean - want_var) < 0.01 * want_var);
}
