#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>

#include "npsense/csv.hpp"
#include "npsense/montecarlo.hpp"
#include "selftest.hpp"

namespace npsense::cli {

namespace {

constexpr const char* kDefaultPfaGrid = "0.001:0.5:30";
constexpr const char* kDefaultSnrGrid = "-20:0:1";

std::string fmt_g10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Command command_from_name(const std::string& name) {
  if (name == "croc") return Command::Croc;
  if (name == "sweep-snr") return Command::SweepSnr;
  if (name == "calibrate") return Command::Calibrate;
  if (name == "simulate") return Command::Simulate;
  if (name == "min-samples") return Command::MinSamples;
  if (name == "selftest") return Command::Selftest;
  throw UsageError("unknown command: " + name +
                   " (expected croc|sweep-snr|calibrate|simulate|min-samples|selftest)");
}

std::vector<double> parse_log_grid(const std::string& text) {
  double lo = 0, hi = 0;
  int points = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3) {
    throw UsageError("pfa-grid must be lo:hi:points, got: " + text);
  }
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) {
    throw UsageError("pfa-grid bounds must satisfy 0 < lo <= hi < 1");
  }
  if (points < 1 || (points == 1 && lo != hi) || (points > 1 && lo == hi)) {
    throw UsageError("pfa-grid points must match its bounds");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    grid.push_back(std::pow(10.0, llo + t * (lhi - llo)));
  }
  grid.front() = lo;
  if (points > 1) grid.back() = hi;
  return grid;
}

std::vector<double> parse_linear_grid(const std::string& text) {
  double lo = 0, hi = 0, step = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3) {
    throw UsageError("snr-grid-db must be lo:hi:step, got: " + text);
  }
  if (!(step > 0.0) || lo > hi) {
    throw UsageError("snr-grid-db needs lo <= hi and step > 0");
  }
  std::vector<double> grid;
  for (double v = lo; v <= hi + step * 1e-9; v += step) grid.push_back(v);
  return grid;
}

std::vector<DetectorKind> parse_detectors(const std::vector<std::string>& names) {
  std::vector<DetectorKind> kinds;
  for (const std::string& name : names) {
    if (name == "all") {
      return {DetectorKind::NeymanPearson, DetectorKind::ConventionalPilot,
              DetectorKind::Energy};
    }
    try {
      kinds.push_back(detector_from_name(name));
    } catch (const std::exception&) {
      throw UsageError("detector must be np|pilot|energy|all, got: " + name);
    }
  }
  return kinds;
}

std::vector<AnalyticMode> parse_modes(const std::string& name) {
  if (name == "paper") return {AnalyticMode::Paper};
  if (name == "exact") return {AnalyticMode::Exact};
  if (name == "both") return {AnalyticMode::Paper, AnalyticMode::Exact};
  throw UsageError("mode must be paper|exact|both, got: " + name);
}

void check_probability(double p, const char* flag) {
  if (!(p > 0.0 && p < 1.0)) {
    throw UsageError(std::string(flag) + " must be in (0, 1), got " + fmt_g10(p));
  }
}

// Raw flag values as CLI11 sees them; RunPlan resolution happens afterwards.
struct RawOptions {
  std::string command;
  double theta = 0.1;
  double pilot_offset_db = 0.0;
  double snr_db = -5.0;
  std::string snr_grid;
  std::vector<int> samples;
  std::uint64_t trials_h0 = 0, trials_h1 = 0;
  std::vector<double> pfa;
  std::string pfa_grid;
  double pmd = 0.1;
  std::uint64_t seed = 1, pilot_seed = 1;
  std::string mode = "both";
  std::vector<std::string> detectors{"all"};
  std::string out = "-";
  double confidence = 0.95;
  int workers = 0;
};

std::unique_ptr<CLI::App> make_app(RawOptions& raw) {
  auto app = std::make_unique<CLI::App>("spectrum sensing experiment runner", "npsense");
  app->get_formatter()->column_width(30);
  app->add_option("command", raw.command,
                  "one of: croc | sweep-snr | calibrate | simulate | min-samples | selftest")
      ->required();
  app->set_config("--config", "",
                  "key=value config file, same keys as the long flags; command-line wins");
  app->allow_config_extras(CLI::config_extras_mode::error);

  auto* theta_opt = app->add_option("--theta", raw.theta, "pilot power fraction in [0, 1)")
                        ->capture_default_str();
  auto* offset_opt = app->add_option(
      "--pilot-offset-db", raw.pilot_offset_db,
      "derive theta from a data-over-pilot power offset in dB (excludes --theta)");
  theta_opt->excludes(offset_opt);
  offset_opt->excludes(theta_opt);

  app->add_option("--snr-db", raw.snr_db, "SNR in dB; linear gamma = 10^(dB/10)")
      ->capture_default_str();
  app->add_option("--snr-grid-db", raw.snr_grid,
                  std::string("sweep-snr SNR grid lo:hi:step in dB (default ") + kDefaultSnrGrid +
                      ")");
  app->add_option("--samples", raw.samples,
                  "block length N, comma list allowed (default 100; sweep-snr: 100,1000)")
      ->delimiter(',');
  app->add_option("--trials-h0", raw.trials_h0,
                  "noise-only trials (default 0; simulate: 200000)");
  app->add_option("--trials-h1", raw.trials_h1,
                  "signal-present trials (default 0 = analytic only; simulate: 200000)");
  app->add_option("--pfa", raw.pfa,
                  "false-alarm target(s), comma list allowed (default 0.1; sweep-snr: 0.1,0.001)")
      ->delimiter(',');
  app->add_option("--pfa-grid", raw.pfa_grid,
                  std::string("croc grid lo:hi:points, log-spaced (default ") + kDefaultPfaGrid +
                      ")");
  app->add_option("--pmd", raw.pmd, "min-samples miss-probability target")
      ->capture_default_str();
  app->add_option("--seed", raw.seed, "master seed for Monte Carlo trials")
      ->capture_default_str();
  app->add_option("--pilot-seed", raw.pilot_seed, "seed for the pilot sign pattern")
      ->capture_default_str();
  app->add_option("--mode", raw.mode, "analytics: paper | exact | both")->capture_default_str();
  app->add_option("--detector", raw.detectors, "np | pilot | energy | all, comma list allowed")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--out", raw.out, "output path; - writes to stdout")->capture_default_str();
  app->add_option("--confidence", raw.confidence, "confidence level for Wilson intervals")
      ->capture_default_str();
  app->add_option("--workers", raw.workers,
                  "Monte Carlo worker threads; 0 = hardware (results identical for any count)")
      ->capture_default_str();
  return app;
}

}  // namespace

RunPlan parse_command(const std::vector<std::string>& args) {
  RawOptions raw;
  const auto app = make_app(raw);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app->parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw;  // cli_main prints the help text
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunPlan plan;
  plan.command = command_from_name(raw.command);

  const bool offset_given = app->count("--pilot-offset-db") > 0;
  plan.theta = offset_given ? theta_from_pilot_offset_db(raw.pilot_offset_db) : raw.theta;
  if (!(plan.theta >= 0.0)) throw UsageError("theta must be >= 0");
  if (!(plan.theta < 1.0)) throw UsageError("theta must be < 1");

  plan.snr_db = raw.snr_db;
  plan.snr_grid_db = parse_linear_grid(raw.snr_grid.empty() ? kDefaultSnrGrid : raw.snr_grid);

  plan.samples = raw.samples;
  if (plan.samples.empty()) {
    plan.samples = plan.command == Command::SweepSnr ? std::vector<int>{100, 1000}
                                                     : std::vector<int>{100};
  }
  for (int n : plan.samples) {
    if (n < 1) throw UsageError("n_samples must be >= 1");
  }

  plan.trials_h0 = raw.trials_h0;
  plan.trials_h1 = raw.trials_h1;
  if (plan.command == Command::Simulate) {
    if (app->count("--trials-h0") == 0) plan.trials_h0 = 200000;
    if (app->count("--trials-h1") == 0) plan.trials_h1 = 200000;
    if (plan.trials_h0 < 1 || plan.trials_h1 < 1) {
      throw UsageError("simulate needs trials-h0 and trials-h1 >= 1");
    }
  }

  plan.pfa_targets = raw.pfa;
  if (plan.pfa_targets.empty()) {
    plan.pfa_targets = plan.command == Command::SweepSnr ? std::vector<double>{0.1, 0.001}
                                                         : std::vector<double>{0.1};
  }
  for (double p : plan.pfa_targets) check_probability(p, "pfa");

  plan.pfa_grid = parse_log_grid(raw.pfa_grid.empty() ? kDefaultPfaGrid : raw.pfa_grid);
  plan.pmd_target = raw.pmd;
  check_probability(plan.pmd_target, "pmd");

  plan.seed = raw.seed;
  plan.pilot_seed = raw.pilot_seed;
  plan.modes = parse_modes(raw.mode);
  plan.detectors = parse_detectors(raw.detectors);
  plan.out = raw.out;
  plan.confidence = raw.confidence;
  check_probability(plan.confidence, "confidence");
  plan.workers = raw.workers;
  return plan;
}

std::string help_text() {
  RawOptions raw;
  return make_app(raw)->help();
}

namespace {

SensingParams params_for(const RunPlan& plan, double snr_db, int n_samples) {
  return SensingParams(plan.theta, std::pow(10.0, snr_db / 10.0), 1.0, n_samples);
}

int require_single_n(const RunPlan& plan) {
  if (plan.samples.size() != 1) {
    throw UsageError("this command takes a single --samples value");
  }
  return plan.samples.front();
}

std::optional<OverlaySettings> overlay_for(const RunPlan& plan) {
  if (plan.trials_h1 == 0) return std::nullopt;
  OverlaySettings overlay;
  overlay.trials_h1 = plan.trials_h1;
  overlay.master_seed = plan.seed;
  overlay.pilot_seed = plan.pilot_seed;
  overlay.confidence = plan.confidence;
  overlay.workers = plan.workers;
  return overlay;
}

// Writes through `sink` when out is "-", otherwise to the file path.
int with_output(const RunPlan& plan, std::ostream& sink,
                const std::function<void(std::ostream&)>& body) {
  if (plan.out == "-") {
    body(sink);
    return 0;
  }
  std::ofstream file(plan.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + plan.out);
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("write failed: " + plan.out);
  return 0;
}

int run_croc_command(const RunPlan& plan, std::ostream& out) {
  CrocSpec spec{params_for(plan, plan.snr_db, require_single_n(plan)), plan.detectors,
                plan.pfa_grid, plan.modes, overlay_for(plan)};
  const CurveTable table = run_croc(spec);
  return with_output(plan, out, [&](std::ostream& os) { emit_csv(table, os); });
}

int run_sweep_command(const RunPlan& plan, std::ostream& out) {
  SweepSpec spec;
  spec.snr_grid_db = plan.snr_grid_db;
  spec.pfa_targets = plan.pfa_targets;
  spec.n_list = plan.samples;
  spec.theta = plan.theta;
  spec.noise_variance = 1.0;
  spec.detectors = plan.detectors;
  spec.modes = plan.modes;
  spec.overlay = overlay_for(plan);
  const CurveTable table = run_pmd_vs_snr(spec);
  return with_output(plan, out, [&](std::ostream& os) { emit_csv(table, os); });
}

int run_calibrate_command(const RunPlan& plan, std::ostream& out) {
  std::vector<double> targets = plan.pfa_targets;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  CrocSpec spec{params_for(plan, plan.snr_db, require_single_n(plan)), plan.detectors, targets,
                plan.modes, std::nullopt};
  const CurveTable table = run_croc(spec);
  return with_output(plan, out, [&](std::ostream& os) { emit_csv(table, os); });
}

int run_simulate_command(const RunPlan& plan, std::ostream& out) {
  const SensingParams params = params_for(plan, plan.snr_db, require_single_n(plan));
  std::ostringstream csv;
  csv << "detector,mode,theta,snr_db,n_samples,p_fa_target,threshold,"
         "p_fa_empirical,p_fa_ci_low,p_fa_ci_high,p_md_analytic,"
         "p_md_empirical,p_md_ci_low,p_md_ci_high,trials_h0,trials_h1,seed\n";
  for (DetectorKind detector : plan.detectors) {
    for (AnalyticMode mode : plan.modes) {
      for (double pfa : plan.pfa_targets) {
        const double threshold = threshold_for_pfa(detector, params, pfa, mode);
        TrialPlan trial_plan{params,          detector,        threshold,
                             plan.trials_h0,  plan.trials_h1,  plan.seed,
                             plan.pilot_seed, plan.confidence, plan.workers};
        const ErrorRates rates = estimate_error_rates(trial_plan);
        csv << detector_name(detector) << ',' << mode_name(mode) << ',' << fmt_g10(params.theta)
            << ',' << fmt_g10(plan.snr_db) << ',' << params.n_samples << ',' << fmt_g10(pfa)
            << ',' << fmt_g10(threshold) << ',' << fmt_g10(rates.p_fa.proportion) << ','
            << fmt_g10(rates.p_fa.ci_low) << ',' << fmt_g10(rates.p_fa.ci_high) << ','
            << fmt_g10(miss_detection_probability(detector, params, threshold, mode)) << ','
            << fmt_g10(rates.p_md.proportion) << ',' << fmt_g10(rates.p_md.ci_low) << ','
            << fmt_g10(rates.p_md.ci_high) << ',' << plan.trials_h0 << ',' << plan.trials_h1
            << ',' << plan.seed << '\n';
      }
    }
  }
  return with_output(plan, out, [&](std::ostream& os) { os << csv.str(); });
}

int run_min_samples_command(const RunPlan& plan, std::ostream& out) {
  std::ostringstream csv;
  csv << "detector,mode,theta,snr_db,p_fa_target,p_md_target,min_samples\n";
  const double snr = std::pow(10.0, plan.snr_db / 10.0);
  for (DetectorKind detector : plan.detectors) {
    for (AnalyticMode mode : plan.modes) {
      for (double pfa : plan.pfa_targets) {
        const int n = min_samples_for_targets(detector, plan.theta, snr, 1.0, pfa,
                                              plan.pmd_target, mode);
        csv << detector_name(detector) << ',' << mode_name(mode) << ',' << fmt_g10(plan.theta)
            << ',' << fmt_g10(plan.snr_db) << ',' << fmt_g10(pfa) << ','
            << fmt_g10(plan.pmd_target) << ',' << n << '\n';
      }
    }
  }
  return with_output(plan, out, [&](std::ostream& os) { os << csv.str(); });
}

}  // namespace

int run_plan(const RunPlan& plan, std::ostream& out, std::ostream& err) {
  switch (plan.command) {
    case Command::Croc: return run_croc_command(plan, out);
    case Command::SweepSnr: return run_sweep_command(plan, out);
    case Command::Calibrate: return run_calibrate_command(plan, out);
    case Command::Simulate: return run_simulate_command(plan, out);
    case Command::MinSamples: return run_min_samples_command(plan, out);
    case Command::Selftest: return run_selftest(out) ? 0 : 1;
  }
  err << "unhandled command\n";
  return 1;
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunPlan plan = parse_command(args);
    return run_plan(plan, std::cout, std::cerr);
  } catch (const CLI::CallForHelp&) {
    std::cout << help_text();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace npsense::cli
