#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "npsense/analytic.hpp"
#include "npsense/montecarlo.hpp"

namespace npsense {

/// Monte Carlo overlay settings for curve experiments. The overlay adds an
/// empirical miss-probability column (H1 trials) next to the analytic one.
struct OverlaySettings {
  std::uint64_t trials_h1 = 200000;
  std::uint64_t master_seed = 1;
  std::uint64_t pilot_seed = 1;
  double confidence = 0.95;
  int workers = 0;
};

/// Complementary ROC: miss probability swept over a false-alarm grid at one
/// operating point.
struct CrocSpec {
  SensingParams params;
  std::vector<DetectorKind> detectors;
  std::vector<double> pfa_grid;  // strictly increasing, values in (0, 1)
  std::vector<AnalyticMode> modes;
  std::optional<OverlaySettings> overlay;
};

/// Miss probability versus SNR for several block lengths and false-alarm
/// targets.
struct SweepSpec {
  std::vector<double> snr_grid_db;  // sorted ascending
  std::vector<double> pfa_targets;
  std::vector<int> n_list;
  double theta = 0.1;
  double noise_variance = 1.0;
  std::vector<DetectorKind> detectors;
  std::vector<AnalyticMode> modes;
  std::optional<OverlaySettings> overlay;
};

struct CurveRow {
  DetectorKind detector;
  AnalyticMode mode;
  double theta;
  double snr_db;
  int n_samples;
  double p_fa_target;
  double threshold;
  double p_md_analytic;
  std::optional<double> p_md_empirical;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
};

using CurveTable = std::vector<CurveRow>;

/// One row per (detector, mode, grid point), in canonical order: detector,
/// mode, then grid coordinates. Order is independent of execution schedule.
CurveTable run_croc(const CrocSpec& spec);

/// Rows for the cartesian product detector x mode x N x SNR x target.
CurveTable run_pmd_vs_snr(const SweepSpec& spec);

/// Smallest N for which the detector meets both error targets at once;
/// exponential bracket plus bisection on the N-monotone miss probability.
/// Throws std::runtime_error("infeasible...") when no N up to `cap` works.
int min_samples_for_targets(DetectorKind detector, double theta, double snr,
                            double noise_variance, double target_pfa, double target_pmd,
                            AnalyticMode mode, long long cap = 1000000000LL);

}  // namespace npsense
