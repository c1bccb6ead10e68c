#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "npsense/experiments.hpp"

namespace npsense::cli {

/// Command-line or config-file mistakes: unknown flags, conflicting flags,
/// values outside their domain. Mapped to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Command { Croc, SweepSnr, Calibrate, Simulate, MinSamples, Selftest };

/// Fully resolved invocation: every numeric value validated, every default
/// applied exactly once.
struct RunPlan {
  Command command = Command::Selftest;
  double theta = 0.1;
  double snr_db = -5.0;
  std::vector<double> snr_grid_db;  // sweep-snr only
  std::vector<int> samples;
  std::uint64_t trials_h0 = 0;
  std::uint64_t trials_h1 = 0;
  std::vector<double> pfa_targets;
  std::vector<double> pfa_grid;  // croc only
  double pmd_target = 0.1;       // min-samples only
  std::uint64_t seed = 1;
  std::uint64_t pilot_seed = 1;
  std::vector<AnalyticMode> modes;
  std::vector<DetectorKind> detectors;
  std::string out = "-";  // "-" = stdout
  double confidence = 0.95;
  int workers = 0;
};

/// Parses `croc|sweep-snr|calibrate|simulate|min-samples|selftest` plus flags
/// (program name excluded). Throws UsageError on unknown/conflicting flags or
/// domain violations, naming the violated rule.
RunPlan parse_command(const std::vector<std::string>& args);

/// Executes a parsed plan. `out`/`err` stand in for stdout/stderr so tests can
/// capture them. Returns a process exit code (0 ok, 1 runtime failure).
int run_plan(const RunPlan& plan, std::ostream& out, std::ostream& err);

/// Full entry point: parse, run, map errors to exit codes 0/1/2.
int cli_main(int argc, const char* const* argv);

/// Help text listing every flag with its documented default.
std::string help_text();

}  // namespace npsense::cli
