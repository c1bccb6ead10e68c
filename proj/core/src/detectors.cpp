#include "npsense/detectors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace npsense {

namespace {

void check_lengths(const PilotSequence& pilot, const ObservationBlock& obs) {
  if (pilot.samples.size() != obs.samples.size()) {
    throw std::invalid_argument("pilot and observation lengths differ");
  }
}

// 2 sqrt(theta) sigma^2 / ((1-theta) P): weight of the correlation term
// inside the combined statistic.
double np_cross_coefficient(const SensingParams& params) {
  return 2.0 * std::sqrt(params.theta) * params.noise_variance / params.data_power();
}

}  // namespace

Statistic stat_pilot(const PilotSequence& pilot, const ObservationBlock& obs) {
  check_lengths(pilot, obs);
  double acc = 0.0;
  for (std::size_t i = 0; i < obs.samples.size(); ++i) {
    acc += pilot.samples[i] * obs.samples[i];
  }
  return {acc / static_cast<double>(obs.samples.size()), DetectorKind::ConventionalPilot};
}

Statistic stat_energy(const ObservationBlock& obs) {
  double acc = 0.0;
  for (double y : obs.samples) acc += y * y;
  const double n = obs.samples.empty() ? 1.0 : static_cast<double>(obs.samples.size());
  return {acc / n, DetectorKind::Energy};
}

Statistic stat_np(const SensingParams& params, const PilotSequence& pilot,
                  const ObservationBlock& obs) {
  check_lengths(pilot, obs);
  const double value =
      stat_energy(obs).value + np_cross_coefficient(params) * stat_pilot(pilot, obs).value;
  return {value, DetectorKind::NeymanPearson};
}

Statistic compute_statistic(DetectorKind kind, const SensingParams& params,
                            const PilotSequence& pilot, const ObservationBlock& obs) {
  switch (kind) {
    case DetectorKind::NeymanPearson:
      return stat_np(params, pilot, obs);
    case DetectorKind::ConventionalPilot:
      return stat_pilot(pilot, obs);
    case DetectorKind::Energy:
      return stat_energy(obs);
  }
  throw std::invalid_argument("unknown detector kind");
}

double log_likelihood_ratio(const SensingParams& params, const PilotSequence& pilot,
                            const ObservationBlock& obs) {
  check_lengths(pilot, obs);
  const double sigma2 = params.noise_variance;
  const double s2 = params.data_power() + sigma2;  // variance of y under H1
  const double pilot_gain = std::sqrt(params.theta);
  const double log_norm_h0 = 0.5 * std::log(2.0 * std::numbers::pi * sigma2);
  const double log_norm_h1 = 0.5 * std::log(2.0 * std::numbers::pi * s2);
  double llr = 0.0;
  for (std::size_t i = 0; i < obs.samples.size(); ++i) {
    const double y = obs.samples[i];
    const double d = y - pilot_gain * pilot.samples[i];
    const double log_f1 = -d * d / (2.0 * s2) - log_norm_h1;
    const double log_f0 = -y * y / (2.0 * sigma2) - log_norm_h0;
    llr += log_f1 - log_f0;
  }
  return llr;
}

LlrAffineMap llr_affine_map(const SensingParams& params) {
  const double sigma2 = params.noise_variance;
  const double data_power = params.data_power();
  const double s2 = data_power + sigma2;
  const double n = static_cast<double>(params.n_samples);
  LlrAffineMap map;
  map.slope_per_sample = data_power / (2.0 * sigma2 * s2);
  map.offset = -n * params.theta * params.signal_power() / (2.0 * s2)
               - 0.5 * n * std::log(s2 / sigma2);
  return map;
}

Hypothesis decide(const Statistic& stat, double threshold) {
  return stat.value > threshold ? Hypothesis::H1 : Hypothesis::H0;
}

}  // namespace npsense
