#pragma once

#include "npsense/sensing_model.hpp"

namespace npsense {

enum class DetectorKind { NeymanPearson, ConventionalPilot, Energy };

/// Raw test statistic value. Units: power for NeymanPearson/Energy,
/// amplitude*power for ConventionalPilot.
struct Statistic {
  double value;
  DetectorKind kind;
};

/// Pilot correlator: (1/N) sum x_p,i y_i.
Statistic stat_pilot(const PilotSequence& pilot, const ObservationBlock& obs);

/// Average energy: (1/N) sum y_i^2.
Statistic stat_energy(const ObservationBlock& obs);

/// Combined statistic (1/N) sum [y_i^2 + (2 sqrt(theta) sigma^2 / data_power) x_p,i y_i].
/// Computed as stat_energy + coefficient * stat_pilot, so the decomposition
/// holds exactly and theta = 0 reduces it to stat_energy bit for bit.
Statistic stat_np(const SensingParams& params, const PilotSequence& pilot,
                  const ObservationBlock& obs);

Statistic compute_statistic(DetectorKind kind, const SensingParams& params,
                            const PilotSequence& pilot, const ObservationBlock& obs);

/// Exact log-likelihood ratio sum_i [ln f(y_i|H1) - ln f(y_i|H0)] with the full
/// Gaussian densities of the observation model, constants included.
double log_likelihood_ratio(const SensingParams& params, const PilotSequence& pilot,
                            const ObservationBlock& obs);

/// The LLR is an affine function of the combined statistic:
///   llr = slope_per_sample * N * stat_np + offset.
struct LlrAffineMap {
  double slope_per_sample;
  double offset;
};
LlrAffineMap llr_affine_map(const SensingParams& params);

/// Threshold test. Ties resolve to H0: claiming the band is occupied on a
/// measure-zero event would only cost the secondary user throughput.
Hypothesis decide(const Statistic& stat, double threshold);

}  // namespace npsense
