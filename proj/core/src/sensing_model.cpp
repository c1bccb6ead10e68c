#include "npsense/sensing_model.hpp"

#include <cmath>
#include <stdexcept>

namespace npsense {

SensingParams::SensingParams(double theta_, double snr_, double noise_variance_, int n_samples_)
    : theta(theta_), snr(snr_), noise_variance(noise_variance_), n_samples(n_samples_) {
  if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
  if (!(theta < 1.0)) throw std::invalid_argument("theta must be < 1");
  if (!(snr > 0.0)) throw std::invalid_argument("snr must be > 0");
  if (!(noise_variance > 0.0)) throw std::invalid_argument("noise variance must be > 0");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
}

DerivedParams derive_params(const SensingParams& params) {
  return {params.signal_power(), params.data_power(), params.pilot_data_ratio(),
          params.data_snr()};
}

double theta_from_pilot_offset_db(double offset_db) {
  if (!std::isfinite(offset_db)) throw std::invalid_argument("pilot offset must be finite");
  return 1.0 / (1.0 + std::pow(10.0, offset_db / 10.0));
}

PilotSequence make_pilot(const SensingParams& params, std::uint64_t pilot_seed) {
  const double amplitude = std::sqrt(params.signal_power());
  CounterRng rng(pilot_seed, RngStream::Pilot, 0);
  PilotSequence pilot;
  pilot.power = params.signal_power();
  pilot.samples.resize(static_cast<std::size_t>(params.n_samples));
  for (double& x : pilot.samples) {
    x = (rng.next_u64() >> 63) ? amplitude : -amplitude;
  }
  return pilot;
}

ObservationBlock synthesize_block(const SensingParams& params, const PilotSequence& pilot,
                                  Hypothesis truth, CounterRng& rng) {
  if (pilot.samples.size() != static_cast<std::size_t>(params.n_samples)) {
    throw std::invalid_argument("pilot length must equal n_samples");
  }
  ObservationBlock block;
  block.truth = truth;
  block.samples.resize(pilot.samples.size());
  const double noise_sd = std::sqrt(params.noise_variance);
  if (truth == Hypothesis::H0) {
    for (double& y : block.samples) y = noise_sd * rng.next_gaussian();
    return block;
  }
  const double pilot_gain = std::sqrt(params.theta);
  const double data_gain = std::sqrt(1.0 - params.theta);
  const double data_sd = std::sqrt(params.signal_power());
  for (std::size_t i = 0; i < block.samples.size(); ++i) {
    const double data = data_sd * rng.next_gaussian();
    const double noise = noise_sd * rng.next_gaussian();
    block.samples[i] = pilot_gain * pilot.samples[i] + data_gain * data + noise;
  }
  return block;
}

}  // namespace npsense
