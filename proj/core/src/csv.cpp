#include "npsense/csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace npsense {

const char* const kCurveTableHeader =
    "detector,mode,theta,snr_db,n_samples,p_fa_target,threshold,p_md_analytic,"
    "p_md_empirical,ci_low,ci_high,trials,seed";

std::string detector_name(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::NeymanPearson: return "np";
    case DetectorKind::ConventionalPilot: return "pilot";
    case DetectorKind::Energy: return "energy";
  }
  throw std::invalid_argument("unknown detector kind");
}

DetectorKind detector_from_name(const std::string& name) {
  if (name == "np") return DetectorKind::NeymanPearson;
  if (name == "pilot") return DetectorKind::ConventionalPilot;
  if (name == "energy") return DetectorKind::Energy;
  throw std::runtime_error("unknown detector name: " + name);
}

std::string mode_name(AnalyticMode mode) {
  return mode == AnalyticMode::Paper ? "paper" : "exact";
}

AnalyticMode mode_from_name(const std::string& name) {
  if (name == "paper") return AnalyticMode::Paper;
  if (name == "exact") return AnalyticMode::Exact;
  throw std::runtime_error("unknown mode name: " + name);
}

namespace {

std::string fmt_g10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt_g10(*v) : std::string();
}

std::string fmt_opt(const std::optional<std::uint64_t>& v) {
  if (!v) return {};
  char buf[24];
  std::snprintf(buf, sizeof buf, "%" PRIu64, *v);
  return buf;
}

std::string format_row(const CurveRow& row) {
  std::string line;
  line += detector_name(row.detector);
  line += ',';
  line += mode_name(row.mode);
  line += ',';
  line += fmt_g10(row.theta);
  line += ',';
  line += fmt_g10(row.snr_db);
  line += ',';
  line += std::to_string(row.n_samples);
  line += ',';
  line += fmt_g10(row.p_fa_target);
  line += ',';
  line += fmt_g10(row.threshold);
  line += ',';
  line += fmt_g10(row.p_md_analytic);
  line += ',';
  line += fmt_opt(row.p_md_empirical);
  line += ',';
  line += fmt_opt(row.ci_low);
  line += ',';
  line += fmt_opt(row.ci_high);
  line += ',';
  line += fmt_opt(row.trials);
  line += ',';
  line += fmt_opt(row.seed);
  line += '\n';
  return line;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::runtime_error("malformed numeric field: " + s);
  return v;
}

}  // namespace

std::size_t emit_csv(const CurveTable& table, std::ostream& out) {
  std::string payload(kCurveTableHeader);
  payload += '\n';
  for (const CurveRow& row : table) payload += format_row(row);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("csv write failed");
  return payload.size();
}

std::size_t emit_csv(const CurveTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  const std::size_t n = emit_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("csv write failed: " + path);
  return n;
}

CurveTable parse_curve_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv input");
  if (line == std::string(kCurveTableHeader) + "\r") line.pop_back();
  if (line != kCurveTableHeader) throw std::runtime_error("unexpected csv header: " + line);
  CurveTable table;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 13) {
      throw std::runtime_error("expected 13 csv fields, got " + std::to_string(fields.size()));
    }
    CurveRow row;
    row.detector = detector_from_name(fields[0]);
    row.mode = mode_from_name(fields[1]);
    row.theta = parse_double(fields[2]);
    row.snr_db = parse_double(fields[3]);
    row.n_samples = static_cast<int>(std::stol(fields[4]));
    row.p_fa_target = parse_double(fields[5]);
    row.threshold = parse_double(fields[6]);
    row.p_md_analytic = parse_double(fields[7]);
    if (!fields[8].empty()) row.p_md_empirical = parse_double(fields[8]);
    if (!fields[9].empty()) row.ci_low = parse_double(fields[9]);
    if (!fields[10].empty()) row.ci_high = parse_double(fields[10]);
    if (!fields[11].empty()) row.trials = std::stoull(fields[11]);
    if (!fields[12].empty()) row.seed = std::stoull(fields[12]);
    table.push_back(row);
  }
  return table;
}

}  // namespace npsense
