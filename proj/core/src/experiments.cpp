#include "npsense/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace npsense {

namespace {

std::vector<DetectorKind> canonical_detectors(std::vector<DetectorKind> detectors) {
  if (detectors.empty()) throw std::invalid_argument("detector set must be non-empty");
  std::sort(detectors.begin(), detectors.end());
  detectors.erase(std::unique(detectors.begin(), detectors.end()), detectors.end());
  return detectors;
}

std::vector<AnalyticMode> canonical_modes(std::vector<AnalyticMode> modes) {
  if (modes.empty()) throw std::invalid_argument("mode set must be non-empty");
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
  return modes;
}

void check_probability_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("pfa grid must be non-empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) {
      throw std::invalid_argument("pfa grid values must be in (0, 1)");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("pfa grid must be strictly increasing");
    }
  }
}

CurveRow make_row(DetectorKind detector, AnalyticMode mode, const SensingParams& params,
                  double snr_db, double pfa_target,
                  const std::optional<OverlaySettings>& overlay) {
  CurveRow row;
  row.detector = detector;
  row.mode = mode;
  row.theta = params.theta;
  row.snr_db = snr_db;
  row.n_samples = params.n_samples;
  row.p_fa_target = pfa_target;
  row.threshold = threshold_for_pfa(detector, params, pfa_target, mode);
  row.p_md_analytic = miss_detection_probability(detector, params, row.threshold, mode);
  if (overlay) {
    TrialPlan plan{params,
                   detector,
                   row.threshold,
                   0,
                   overlay->trials_h1,
                   overlay->master_seed,
                   overlay->pilot_seed,
                   overlay->confidence,
                   overlay->workers};
    const EmpiricalEstimate detected =
        estimate_detection_rate(plan, Hypothesis::H1, overlay->trials_h1);
    const EmpiricalEstimate missed =
        make_estimate(detected.trials - detected.successes, detected.trials, overlay->confidence);
    row.p_md_empirical = missed.proportion;
    row.ci_low = missed.ci_low;
    row.ci_high = missed.ci_high;
    row.trials = missed.trials;
    row.seed = overlay->master_seed;
  }
  return row;
}

}  // namespace

CurveTable run_croc(const CrocSpec& spec) {
  check_probability_grid(spec.pfa_grid);
  const auto detectors = canonical_detectors(spec.detectors);
  const auto modes = canonical_modes(spec.modes);
  const double snr_db = 10.0 * std::log10(spec.params.snr);
  CurveTable table;
  table.reserve(detectors.size() * modes.size() * spec.pfa_grid.size());
  for (DetectorKind detector : detectors) {
    for (AnalyticMode mode : modes) {
      for (double pfa : spec.pfa_grid) {
        table.push_back(make_row(detector, mode, spec.params, snr_db, pfa, spec.overlay));
      }
    }
  }
  return table;
}

CurveTable run_pmd_vs_snr(const SweepSpec& spec) {
  if (spec.snr_grid_db.empty()) throw std::invalid_argument("snr grid must be non-empty");
  if (!std::is_sorted(spec.snr_grid_db.begin(), spec.snr_grid_db.end())) {
    throw std::invalid_argument("snr grid must be sorted ascending");
  }
  if (spec.n_list.empty()) throw std::invalid_argument("sample-count list must be non-empty");
  for (double pfa : spec.pfa_targets) {
    if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("pfa targets must be in (0, 1)");
  }
  if (spec.pfa_targets.empty()) throw std::invalid_argument("pfa target list must be non-empty");

  const auto detectors = canonical_detectors(spec.detectors);
  const auto modes = canonical_modes(spec.modes);
  CurveTable table;
  table.reserve(detectors.size() * modes.size() * spec.n_list.size() * spec.snr_grid_db.size() *
                spec.pfa_targets.size());
  for (DetectorKind detector : detectors) {
    for (AnalyticMode mode : modes) {
      for (int n : spec.n_list) {
        for (double snr_db : spec.snr_grid_db) {
          const double snr = std::pow(10.0, snr_db / 10.0);
          const SensingParams params(spec.theta, snr, spec.noise_variance, n);
          for (double pfa : spec.pfa_targets) {
            table.push_back(make_row(detector, mode, params, snr_db, pfa, spec.overlay));
          }
        }
      }
    }
  }
  return table;
}

int min_samples_for_targets(DetectorKind detector, double theta, double snr,
                            double noise_variance, double target_pfa, double target_pmd,
                            AnalyticMode mode, long long cap) {
  if (!(target_pfa > 0.0 && target_pfa < 1.0) || !(target_pmd > 0.0 && target_pmd < 1.0)) {
    throw std::domain_error("error targets must be in (0, 1)");
  }
  const auto pmd_at = [&](long long n) {
    const SensingParams params(theta, snr, noise_variance, static_cast<int>(n));
    return pmd_at_pfa(detector, params, target_pfa, mode);
  };
  long long lo = 0;  // largest known-failing N (0 = none tried)
  long long hi = 1;
  while (pmd_at(hi) > target_pmd) {
    lo = hi;
    hi *= 2;
    if (hi > cap) {
      throw std::runtime_error("infeasible: no sample count up to " + std::to_string(cap) +
                               " meets the error targets");
    }
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (pmd_at(mid) <= target_pmd) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<int>(hi);
}

}  // namespace npsense
