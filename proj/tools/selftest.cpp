#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "npsense/experiments.hpp"
#include "npsense/montecarlo.hpp"

namespace npsense::cli {

namespace {

struct Check {
  std::string name;
  double expected;
  double actual;
  double tolerance;
  bool ok() const { return std::abs(actual - expected) <= tolerance; }
};

constexpr double kSnrMinus5 = 0.31622776601683794;   // 10^(-5/10)
constexpr double kSnrMinus15 = 0.03162277660168379;  // 10^(-15/10)

}  // namespace

bool run_selftest(std::ostream& out) {
  std::vector<Check> checks;
  const auto add = [&checks](std::string name, double expected, double actual, double tol) {
    checks.push_back({std::move(name), expected, actual, tol});
  };

  add("q_func_at_zero", 0.5, q_func(0.0), 1e-15);
  add("q_func_tail_0.1", 0.1, q_func(1.2815515655446004), 1e-12);
  add("q_inv_roundtrip_1.5", 1.5, q_inv(q_func(1.5)), 1e-9);

  const SensingParams at5(0.1, kSnrMinus5, 1.0, 100);
  const SensingParams at15(0.1, kSnrMinus15, 1.0, 100);
  add("derived_phi_theta_0.1", 1.0 / 9.0, at5.pilot_data_ratio(), 1e-15);
  add("theta_from_offset_11db", 0.07358755611756855, theta_from_pilot_offset_db(11.0), 1e-12);

  add("np_paper_pmd_-5dB", 0.098,
      pmd_at_pfa(DetectorKind::NeymanPearson, at5, 0.1, AnalyticMode::Paper), 2e-3);
  add("np_exact_pmd_-5dB", 0.124,
      pmd_at_pfa(DetectorKind::NeymanPearson, at5, 0.1, AnalyticMode::Exact), 2e-3);
  add("pilot_paper_pmd_-5dB", 0.310,
      pmd_at_pfa(DetectorKind::ConventionalPilot, at5, 0.1, AnalyticMode::Paper), 2e-3);
  add("pilot_paper_pmd_-15dB", 0.764,
      pmd_at_pfa(DetectorKind::ConventionalPilot, at15, 0.1, AnalyticMode::Paper), 2e-3);
  add("np_exact_pmd_-15dB", 0.742,
      pmd_at_pfa(DetectorKind::NeymanPearson, at15, 0.1, AnalyticMode::Exact), 2e-3);

  add("min_samples_pilot_paper", 208,
      min_samples_for_targets(DetectorKind::ConventionalPilot, 0.1, kSnrMinus5, 1.0, 0.1, 0.1,
                              AnalyticMode::Paper),
      0.0);
  add("min_samples_np_paper", 100,
      min_samples_for_targets(DetectorKind::NeymanPearson, 0.1, kSnrMinus5, 1.0, 0.1, 0.1,
                              AnalyticMode::Paper),
      1.0);

  // Monte Carlo smoke at 2e4 trials. The pilot false-alarm calibration is
  // Gaussian-exact; the combined statistic's miss rate carries a small
  // large-sample approximation residue at N=100, covered by the tolerance.
  {
    const TrialPlan plan{
        .params = at5,
        .detector = DetectorKind::ConventionalPilot,
        .threshold = threshold_for_pfa(DetectorKind::ConventionalPilot, at5, 0.1,
                                       AnalyticMode::Exact),
        .master_seed = 42,
    };
    const EmpiricalEstimate pfa = estimate_detection_rate(plan, Hypothesis::H0, 20000);
    add("mc_pilot_pfa_0.1_smoke", 0.1, pfa.proportion, 0.01);
  }
  {
    const TrialPlan plan{
        .params = at5,
        .detector = DetectorKind::NeymanPearson,
        .threshold =
            threshold_for_pfa(DetectorKind::NeymanPearson, at5, 0.1, AnalyticMode::Exact),
        .master_seed = 42,
    };
    const EmpiricalEstimate detected = estimate_detection_rate(plan, Hypothesis::H1, 20000);
    const double analytic = pmd_at_pfa(DetectorKind::NeymanPearson, at5, 0.1, AnalyticMode::Exact);
    add("mc_np_pmd_0.1_smoke", analytic, 1.0 - detected.proportion, 0.015);
  }

  bool all_ok = true;
  for (const Check& check : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%-28s expected %-12.6g actual %-12.6g %s\n",
                  check.name.c_str(), check.expected, check.actual,
                  check.ok() ? "[ok]" : "[FAIL]");
    out << line;
    all_ok = all_ok && check.ok();
  }
  out << (all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES detected\n");
  return all_ok;
}

}  // namespace npsense::cli
