#pragma once

#include <iosfwd>
#include <string>

#include "npsense/experiments.hpp"

namespace npsense {

/// Fixed column layout for curve tables. Probabilities are printed with 10
/// significant digits; absent optionals are empty fields; the final line is
/// newline-terminated.
extern const char* const kCurveTableHeader;

std::string detector_name(DetectorKind kind);
DetectorKind detector_from_name(const std::string& name);
std::string mode_name(AnalyticMode mode);
AnalyticMode mode_from_name(const std::string& name);

/// Writes header plus one line per row; returns the byte count written.
std::size_t emit_csv(const CurveTable& table, std::ostream& out);

/// Same, to a file path. Throws std::runtime_error when the destination
/// cannot be opened or written.
std::size_t emit_csv(const CurveTable& table, const std::string& path);

/// Inverse of emit_csv up to print precision. Throws std::runtime_error on a
/// malformed header or row.
CurveTable parse_curve_table(std::istream& in);

}  // namespace npsense
