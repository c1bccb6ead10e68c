#pragma once

#include <iosfwd>

namespace npsense::cli {

/// Deterministic analytic checks plus a small Monte Carlo smoke run. Prints
/// one line per check (name, expected, actual, verdict) and a summary.
/// Returns true iff every check passed.
bool run_selftest(std::ostream& out);

}  // namespace npsense::cli
