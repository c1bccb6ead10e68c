#include "npsense/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace npsense {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Rational approximation of the standard normal quantile (Acklam), absolute
// relative error ~1.15e-9. Used only as the Newton starting point.
double q_inv_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Gaussian quantile convention: returns z with P(Z < z) = p.
  return x;
}

SensingParams energy_view(const SensingParams& params) {
  // The energy detector's closed forms are the theta -> 0 limit of the
  // combined-statistic machinery; same gamma, sigma^2 and N.
  return SensingParams(0.0, params.snr, params.noise_variance, params.n_samples);
}

// Dimensionless miss probability of the combined statistic in Paper mode,
// exactly in its published shape. Note the trailing 2*theta: the summed
// component variances would give 2*phi here (see statistic_distribution), but
// this routine reproduces the printed form verbatim.
double np_paper_pmd_from_raw(const SensingParams& params, double threshold) {
  const double n = static_cast<double>(params.n_samples);
  const double gamma = params.snr;
  const double theta = params.theta;
  const double phi = params.pilot_data_ratio();
  const double gamma_d = params.data_snr();
  const double lam = threshold / params.noise_variance;
  const double num = std::sqrt(n / 2.0) * (lam - gamma - (1.0 + 2.0 * phi));
  const double den = std::sqrt((1.0 + 1.0 / gamma_d) *
                               ((1.0 - theta * theta) * gamma * gamma + gamma_d + 2.0 * theta));
  return q_func(-num / den);
}

}  // namespace

double q_func(double x) {
  if (std::isnan(x)) throw std::invalid_argument("q_func: x must be finite");
  return 0.5 * std::erfc(x * kInvSqrt2);
}

double q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("q_inv: p must be in (0, 1)");
  // Seed is the lower-tail quantile; Q(x) = p means P(Z < x) = 1 - p.
  double x = -q_inv_seed(p);
  // Two Newton steps on q_func(x) - p drive the seed to machine precision.
  for (int i = 0; i < 2; ++i) {
    const double err = q_func(x) - p;
    x += err / std_normal_pdf(x);
  }
  return x;
}

GaussianSpec statistic_distribution(DetectorKind detector, Hypothesis hypothesis,
                                    const SensingParams& params, AnalyticMode mode) {
  if (detector == DetectorKind::Energy) {
    return statistic_distribution(DetectorKind::NeymanPearson, hypothesis, energy_view(params),
                                  mode);
  }
  const double n = static_cast<double>(params.n_samples);
  const double sigma2 = params.noise_variance;
  const double signal_power = params.signal_power();
  const double data_power = params.data_power();
  const double phi = params.pilot_data_ratio();
  const double s2 = data_power + sigma2;

  if (detector == DetectorKind::ConventionalPilot) {
    const double h0_variance = signal_power * sigma2 / n;
    if (hypothesis == Hypothesis::H0) return {0.0, h0_variance, 1.0};
    const double mean = std::sqrt(params.theta) * signal_power;
    if (mode == AnalyticMode::Paper) return {mean, h0_variance, 1.0};
    return {mean, signal_power * s2 / n, 1.0};
  }

  // Combined statistic. H0: normalized by N/sigma^2; H1: by N/(data_power+sigma^2).
  if (hypothesis == Hypothesis::H0) {
    const double variance = (2.0 * n / data_power) * (data_power + 2.0 * phi * sigma2);
    return {n, variance, n / sigma2};
  }
  const double mean = (n * signal_power + n * (1.0 + 2.0 * phi) * sigma2) / s2;
  double variance = 2.0 * n *
                    ((1.0 - params.theta * params.theta) * signal_power * signal_power +
                     (data_power + 2.0 * phi * sigma2) * sigma2) /
                    (data_power * s2);
  if (mode == AnalyticMode::Exact) {
    // Per-sample Cov(y^2, y) = 2 * mean * variance, summed over the block.
    variance += 8.0 * n * params.theta * signal_power * sigma2 / (data_power * s2);
  }
  return {mean, variance, n / s2};
}

double false_alarm_probability(DetectorKind detector, const SensingParams& params,
                               double threshold, AnalyticMode mode) {
  const GaussianSpec spec = statistic_distribution(detector, Hypothesis::H0, params, mode);
  const double z = (threshold * spec.normalization - spec.mean) / std::sqrt(spec.variance);
  return q_func(z);
}

double miss_detection_probability(DetectorKind detector, const SensingParams& params,
                                  double threshold, AnalyticMode mode) {
  if (mode == AnalyticMode::Paper && detector != DetectorKind::ConventionalPilot) {
    const SensingParams& view =
        detector == DetectorKind::Energy ? energy_view(params) : params;
    return np_paper_pmd_from_raw(view, threshold);
  }
  const GaussianSpec spec = statistic_distribution(detector, Hypothesis::H1, params, mode);
  const double z = (threshold * spec.normalization - spec.mean) / std::sqrt(spec.variance);
  return q_func(-z);
}

double threshold_for_pfa(DetectorKind detector, const SensingParams& params, double target_pfa,
                         AnalyticMode mode) {
  (void)mode;  // H0 statistics agree across modes.
  if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
    throw std::domain_error("target_pfa must be in (0, 1)");
  }
  const double n = static_cast<double>(params.n_samples);
  if (detector == DetectorKind::ConventionalPilot) {
    return std::sqrt(params.signal_power() * params.noise_variance / n) * q_inv(target_pfa);
  }
  const double phi = detector == DetectorKind::Energy ? 0.0 : params.pilot_data_ratio();
  const double gamma_d = detector == DetectorKind::Energy ? params.snr : params.data_snr();
  return params.noise_variance *
         (1.0 + std::sqrt(2.0 / n) * std::sqrt(1.0 + 2.0 * phi / gamma_d) * q_inv(target_pfa));
}

double pmd_at_pfa(DetectorKind detector, const SensingParams& params, double target_pfa,
                  AnalyticMode mode) {
  return miss_detection_probability(detector, params,
                                    threshold_for_pfa(detector, params, target_pfa, mode), mode);
}

PerformancePoint performance_point(DetectorKind detector, const SensingParams& params,
                                   double target_pfa, AnalyticMode mode) {
  const double threshold = threshold_for_pfa(detector, params, target_pfa, mode);
  return {detector, mode, threshold,
          false_alarm_probability(detector, params, threshold, mode),
          miss_detection_probability(detector, params, threshold, mode)};
}

}  // namespace npsense
