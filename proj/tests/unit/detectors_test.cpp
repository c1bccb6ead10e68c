#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "npsense/detectors.hpp"
#include "test_util.hpp"

using namespace npsense;
using namespace npsense::testutil;

namespace {

ObservationBlock block_of(std::vector<double> samples, Hypothesis truth = Hypothesis::H0) {
  return {std::move(samples), truth};
}

PilotSequence pilot_of(std::vector<double> samples, double power) {
  return {std::move(samples), power};
}

}  // namespace

TEST_CASE("pilot correlator") {
  const PilotSequence pilot = pilot_of({1, 1, 1, 1}, 1.0);
  CHECK(stat_pilot(pilot, block_of({0, 0, 0, 0})).value == 0.0);
  CHECK(stat_pilot(pilot, block_of({1, -1, 1, -1})).value == 0.0);
  CHECK(stat_pilot(pilot, block_of({2, 2, 2, 2})).value == 2.0);
  CHECK(stat_pilot(pilot, block_of({2, 2, 2, 2})).kind == DetectorKind::ConventionalPilot);
  CHECK_THROWS_AS(stat_pilot(pilot, block_of({1, 2})), std::invalid_argument);
}

TEST_CASE("energy statistic") {
  CHECK(stat_energy(block_of({1, -1, 1, -1})).value == 1.0);
  CHECK(stat_energy(block_of({0, 0})).value == 0.0);
  CHECK(stat_energy(block_of({2, 0})).value == 2.0);
}

TEST_CASE("combined statistic worked example") {
  // theta = 0.1, sigma^2 = 1, P = 1 (snr = 1), N = 2: coefficient 2 sqrt(.1)/.9.
  const SensingParams params(0.1, 1.0, 1.0, 2);
  const PilotSequence pilot = pilot_of({1, 1}, 1.0);
  const double coefficient = 2.0 * std::sqrt(0.1) / 0.9;
  const Statistic stat = stat_np(params, pilot, block_of({1, 0}));
  CHECK(stat.value == doctest::Approx(0.5 * (1.0 + coefficient)).epsilon(1e-15));
  CHECK(stat.value == doctest::Approx(0.85136418).epsilon(1e-7));
  CHECK(stat_np(params, pilot, block_of({0, 0})).value == 0.0);
}

TEST_CASE("combined statistic decomposes exactly and reduces at theta 0") {
  const SensingParams params = params_at(0.1, -5.0, 100);
  const SensingParams no_pilot(0.0, params.snr, 1.0, 100);
  const PilotSequence pilot = make_pilot(params, 3);
  const double coefficient =
      2.0 * std::sqrt(params.theta) * params.noise_variance / params.data_power();
  CounterRng rng(31, RngStream::Generic, 0);
  for (int t = 0; t < 200; ++t) {
    const ObservationBlock obs = block_of(random_obs(rng, 100, 1.3));
    const double energy = stat_energy(obs).value;
    const double corr = stat_pilot(pilot, obs).value;
    CHECK(stat_np(params, pilot, obs).value == energy + coefficient * corr);
    CHECK(stat_np(no_pilot, pilot, obs).value == energy);
  }
}

TEST_CASE("pilot correlator is linear in the observation") {
  const PilotSequence pilot = make_pilot(SensingParams(0.1, 1.0, 1.0, 50), 9);
  CounterRng rng(12, RngStream::Generic, 1);
  const std::size_t n = 50;
  const std::vector<double> u = random_obs(rng, 50, 1.0);
  const std::vector<double> v = random_obs(rng, 50, 2.0);
  std::vector<double> combo(n);
  for (std::size_t i = 0; i < n; ++i) combo[i] = 3.0 * u[i] - 0.5 * v[i];
  const double lhs = stat_pilot(pilot, block_of(combo)).value;
  const double rhs = 3.0 * stat_pilot(pilot, block_of(u)).value -
                     0.5 * stat_pilot(pilot, block_of(v)).value;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("log-likelihood ratio evaluates the exact densities") {
  // Worked value: theta .1, -5 dB, N = 1, pilot amplitude 1, observation 0.
  const SensingParams params = params_at(0.1, -5.0, 1);
  const PilotSequence pilot = pilot_of({1.0}, 1.0);
  const double llr = log_likelihood_ratio(params, pilot, block_of({0.0}));
  CHECK(llr == doctest::Approx(kLlrZeroObs).epsilon(1e-9));

  // theta = 0, obs = [0]: mean terms vanish, llr = -ln(1 + gamma)/2.
  const SensingParams no_pilot(0.0, 0.7, 1.0, 1);
  const PilotSequence p0 = make_pilot(no_pilot, 1);
  CHECK(log_likelihood_ratio(no_pilot, p0, block_of({0.0})) ==
        doctest::Approx(-0.5 * std::log(1.7)).epsilon(1e-13));

  // Far from the origin along the pilot the signal hypothesis dominates.
  const SensingParams strong = params_at(0.1, -5.0, 4);
  const PilotSequence p4 = make_pilot(strong, 2);
  std::vector<double> big(4);
  for (std::size_t i = 0; i < 4; ++i) big[i] = 100.0 * p4.samples[i];
  CHECK(log_likelihood_ratio(strong, p4, block_of(big)) > 0.0);
}

TEST_CASE("llr is an affine image of the combined statistic") {
  const SensingParams params = params_at(0.1, -5.0, 100);
  const PilotSequence pilot = make_pilot(params, 1);
  const LlrAffineMap map = llr_affine_map(params);
  CounterRng rng(8, RngStream::Generic, 5);
  for (int t = 0; t < 100; ++t) {
    const ObservationBlock obs = block_of(random_obs(rng, 100, 1.2));
    const double llr = log_likelihood_ratio(params, pilot, obs);
    const double affine =
        map.slope_per_sample * 100.0 * stat_np(params, pilot, obs).value + map.offset;
    CHECK(llr == doctest::Approx(affine).epsilon(1e-9));
  }
}

TEST_CASE("decisions agree between llr and the combined statistic") {
  const SensingParams params = params_at(0.1, -5.0, 100);
  const PilotSequence pilot = make_pilot(params, 1);
  const LlrAffineMap map = llr_affine_map(params);
  const double lambda = 1.2418576288;  // raw threshold near the pfa = 0.1 point
  const double lambda_llr = map.slope_per_sample * 100.0 * lambda + map.offset;
  int disagreements = 0;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const Hypothesis truth = (t % 2 == 0) ? Hypothesis::H0 : Hypothesis::H1;
    CounterRng rng(15, truth == Hypothesis::H0 ? RngStream::H0 : RngStream::H1, t);
    const ObservationBlock obs = synthesize_block(params, pilot, truth, rng);
    const Hypothesis by_stat = decide(stat_np(params, pilot, obs), lambda);
    const Hypothesis by_llr =
        log_likelihood_ratio(params, pilot, obs) > lambda_llr ? Hypothesis::H1 : Hypothesis::H0;
    if (by_stat != by_llr) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("statistic distributions are invariant to the pilot sign pattern") {
  const SensingParams params = params_at(0.1, -5.0, 100);
  const PilotSequence pilot_a = make_pilot(params, 101);
  const PilotSequence pilot_b = make_pilot(params, 202);
  const int trials = 50000;

  for (DetectorKind kind : {DetectorKind::NeymanPearson, DetectorKind::ConventionalPilot}) {
    double sum_a = 0, sum_b = 0, sq_a = 0, sq_b = 0;
    for (int t = 0; t < trials; ++t) {
      CounterRng rng_a(55, RngStream::H1, static_cast<std::uint64_t>(t));
      CounterRng rng_b(56, RngStream::H1, static_cast<std::uint64_t>(t));
      const double va =
          compute_statistic(kind, params, pilot_a,
                            synthesize_block(params, pilot_a, Hypothesis::H1, rng_a))
              .value;
      const double vb =
          compute_statistic(kind, params, pilot_b,
                            synthesize_block(params, pilot_b, Hypothesis::H1, rng_b))
              .value;
      sum_a += va;
      sum_b += vb;
      sq_a += va * va;
      sq_b += vb * vb;
    }
    const double mean_a = sum_a / trials, mean_b = sum_b / trials;
    const double var_a = sq_a / trials - mean_a * mean_a;
    const double var_b = sq_b / trials - mean_b * mean_b;
    const double mean_se = std::sqrt((var_a + var_b) / trials);
    CHECK(std::abs(mean_a - mean_b) < 3.0 * mean_se);
    const double var_se = std::sqrt(2.0 / trials) * (var_a + var_b) / 2.0 * std::sqrt(2.0);
    CHECK(std::abs(var_a - var_b) < 3.0 * var_se);
  }
}

TEST_CASE("threshold ties resolve to H0") {
  const Statistic stat{1.0, DetectorKind::Energy};
  CHECK(decide({2.0, DetectorKind::Energy}, 1.0) == Hypothesis::H1);
  CHECK(decide({0.0, DetectorKind::Energy}, 1.0) == Hypothesis::H0);
  CHECK(decide(stat, 1.0) == Hypothesis::H0);
}
