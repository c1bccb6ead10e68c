#pragma once

#include <cstdint>
#include <utility>

#include "npsense/analytic.hpp"
#include "npsense/detectors.hpp"
#include "npsense/sensing_model.hpp"

namespace npsense {

/// A fully specified simulation: problem, detector, threshold, trial budget
/// and seeds. Everything downstream is a pure function of this plan, so
/// results are bit-identical across reruns and worker counts. Aggregate;
/// designated initializers are the intended construction style.
struct TrialPlan {
  SensingParams params;
  DetectorKind detector = DetectorKind::NeymanPearson;
  double threshold = 0.0;
  std::uint64_t trials_h0 = 0;
  std::uint64_t trials_h1 = 0;
  std::uint64_t master_seed = 1;
  std::uint64_t pilot_seed = 1;
  double confidence = 0.95;  // level for the Wilson intervals
  int workers = 0;           // 0 = hardware concurrency
};

struct EmpiricalEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double proportion = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double confidence = 0.95;
};

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;  // fourth-central-moment formula
  std::uint64_t trials = 0;
};

struct ErrorRates {
  EmpiricalEstimate p_fa;
  EmpiricalEstimate p_md;
};

/// Wilson score interval for a binomial proportion. Behaves sanely at the
/// tiny proportions tight false-alarm experiments produce.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence);

EmpiricalEstimate make_estimate(std::uint64_t successes, std::uint64_t trials, double confidence);

/// Fraction of trials decided H1 when blocks are drawn under `truth` and the
/// plan's detector is compared against the plan's threshold. Trial i draws
/// its randomness from (master_seed, truth, i), so any execution order and
/// worker count give the same counts.
EmpiricalEstimate estimate_detection_rate(const TrialPlan& plan, Hypothesis truth,
                                          std::uint64_t trials);

/// Empirical false alarm (H1 decisions under H0) and miss (H0 decisions under
/// H1) rates for the plan.
ErrorRates estimate_error_rates(const TrialPlan& plan);

/// Sample mean/variance of the raw statistic over `trials` blocks under one
/// hypothesis, with standard errors. The variance SE uses the fourth-moment
/// formula Var(s^2) ~= (m4 - s^4 (n-3)/(n-1)) / n. Reduction runs over a
/// trial-indexed buffer in index order, keeping results worker-count
/// independent.
MomentEstimate estimate_statistic_moments(const SensingParams& params, DetectorKind detector,
                                          Hypothesis hypothesis, std::uint64_t trials,
                                          std::uint64_t master_seed, std::uint64_t pilot_seed,
                                          int workers = 0);

}  // namespace npsense
