#pragma once

#include "npsense/detectors.hpp"
#include "npsense/sensing_model.hpp"

namespace npsense {

/// Two sets of closed-form performance expressions.
///
/// Paper: the textbook large-sample forms. Under H1 they neglect the
/// covariance between the energy and pilot-correlation parts of the combined
/// statistic, the miss-probability denominator carries a theta term where the
/// summed component variances give phi = theta/(1-theta), and the pilot
/// correlator's H1 variance ignores the data-carrying signal.
///
/// Exact: Gaussian approximation with first and second moments derived
/// exactly from the observation model (H1 cross covariance included, pilot H1
/// variance includes the data term). Monte Carlo arbitrates between the two.
///
/// Under H0 the two modes coincide for every detector: the cross covariance
/// vanishes because odd moments of centered Gaussians are zero.
enum class AnalyticMode { Paper, Exact };

/// Gaussian description of a normalized test statistic under one hypothesis.
/// `normalization` maps the raw statistic onto the variable described by
/// mean/variance (raw * normalization ~ N(mean, variance)).
struct GaussianSpec {
  double mean;
  double variance;
  double normalization;
};

struct PerformancePoint {
  DetectorKind detector;
  AnalyticMode mode;
  double threshold;  // raw statistic units
  double p_fa;
  double p_md;
};

/// Standard Gaussian upper-tail probability. Relative error below 1e-12 for
/// |x| <= 8.
double q_func(double x);

/// Inverse of q_func on (0, 1); |q_func(q_inv(p)) - p| <= 1e-10 max(p, 1-p).
double q_inv(double p);

GaussianSpec statistic_distribution(DetectorKind detector, Hypothesis hypothesis,
                                    const SensingParams& params, AnalyticMode mode);

/// P(statistic > threshold | H0). Identical in both modes.
double false_alarm_probability(DetectorKind detector, const SensingParams& params,
                               double threshold, AnalyticMode mode);

/// P(statistic < threshold | H1).
double miss_detection_probability(DetectorKind detector, const SensingParams& params,
                                  double threshold, AnalyticMode mode);

/// Raw threshold achieving the requested false alarm probability; closed-form
/// inversion, accurate to ~1e-10 relative through the round trip.
double threshold_for_pfa(DetectorKind detector, const SensingParams& params, double target_pfa,
                         AnalyticMode mode);

/// miss_detection_probability at the threshold calibrated for target_pfa.
double pmd_at_pfa(DetectorKind detector, const SensingParams& params, double target_pfa,
                  AnalyticMode mode);

PerformancePoint performance_point(DetectorKind detector, const SensingParams& params,
                                   double target_pfa, AnalyticMode mode);

}  // namespace npsense
