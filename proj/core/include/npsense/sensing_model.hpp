#pragma once

#include <cstdint>
#include <vector>

#include "npsense/rng.hpp"

namespace npsense {

enum class Hypothesis { H0, H1 };

/// Problem instance for one sensing experiment: pilot power fraction theta,
/// linear SNR gamma, noise variance sigma^2 and block length N. Values are
/// validated at construction and immutable afterwards.
struct SensingParams {
  double theta;           // fraction of signal power carried by the pilot, [0, 1)
  double snr;             // gamma = P / sigma^2, linear, > 0
  double noise_variance;  // sigma^2, linear power units, > 0
  int n_samples;          // N, IID samples per observation block, >= 1

  SensingParams(double theta, double snr, double noise_variance, int n_samples);

  double signal_power() const { return snr * noise_variance; }          // P
  double data_power() const { return (1.0 - theta) * signal_power(); }  // (1-theta) P
  double pilot_data_ratio() const { return theta / (1.0 - theta); }     // phi
  double data_snr() const { return (1.0 - theta) * snr; }               // (1-theta) gamma
};

struct DerivedParams {
  double signal_power;     // P = gamma sigma^2
  double data_power;       // (1-theta) P
  double pilot_data_ratio; // theta / (1-theta)
  double data_snr;         // (1-theta) gamma
};

DerivedParams derive_params(const SensingParams& params);

/// Pilot power fraction from a "data is X dB stronger than the pilot" figure:
/// solves (1-theta)/theta = 10^(offset_db/10).
double theta_from_pilot_offset_db(double offset_db);

/// The known pilot waveform: N samples, each +/- sqrt(power).
struct PilotSequence {
  std::vector<double> samples;
  double power;
};

/// Deterministic +/- sqrt(P) sign sequence keyed by pilot_seed. Equal seeds
/// give bit-identical sequences.
PilotSequence make_pilot(const SensingParams& params, std::uint64_t pilot_seed);

/// One received block of N samples plus the ground truth that generated it.
/// The truth tag is simulation metadata; detectors never see it.
struct ObservationBlock {
  std::vector<double> samples;
  Hypothesis truth;
};

/// Draws a block from the observation model:
///   H0: y_i = n_i,                       n_i ~ N(0, sigma^2)
///   H1: y_i = sqrt(theta) x_p,i + sqrt(1-theta) x_d,i + n_i,
///       x_d,i ~ N(0, P) independent of n_i
/// Consumes the rng deterministically (H1 draws data first, then noise).
ObservationBlock synthesize_block(const SensingParams& params, const PilotSequence& pilot,
                                  Hypothesis truth, CounterRng& rng);

}  // namespace npsense
