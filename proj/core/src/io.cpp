#include "hds/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hds/error.hpp"
#include "json.hpp"

namespace hds {

using nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

namespace {

std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

template <typename T>
std::optional<T> parse_unsigned(std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

json json_number(double value) {
  if (std::isfinite(value)) return value;
  return format_double(value);
}

}  // namespace

void write_samples_csv(std::ostream& out, const SampleMatrix& samples) {
  for (std::size_t d = 0; d < samples.cols(); ++d) out << (d ? "," : "") << 'x' << d;
  out << '\n';
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const auto row = samples.row(i);
    for (std::size_t d = 0; d < row.size(); ++d) out << (d ? "," : "") << format_double(row[d]);
    out << '\n';
  }
}

void write_samples_json(std::ostream& out, const SampleMatrix& samples) {
  out << "{\"dims\":" << samples.cols() << ",\"n\":" << samples.rows() << ",\"frame\":\""
      << to_string(samples.frame()) << "\",\"samples\":[";
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    out << (i ? ",[" : "[");
    const auto row = samples.row(i);
    for (std::size_t d = 0; d < row.size(); ++d) out << (d ? "," : "") << format_double(row[d]);
    out << ']';
  }
  out << "]}\n";
}

SampleMatrix read_samples_csv(std::istream& in, Frame frame) {
  SampleMatrix out;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> row;
  bool have_shape = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    row.clear();
    bool numeric = true;
    for (auto f : fields) {
      const auto v = parse_double(f);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (!have_shape && out.empty() && line_no == 1) continue;  // header
      throw ConfigError("samples csv: non-numeric value on line " + std::to_string(line_no));
    }
    if (!have_shape) {
      out = SampleMatrix(0, row.size(), frame);
      have_shape = true;
    }
    if (row.size() != out.cols()) {
      throw ConfigError("samples csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(row.size()) + " fields, expected " + std::to_string(out.cols()));
    }
    out.append_row(row);
  }
  return out;
}

std::string record_to_csv(const TrialRecord& r) {
  std::ostringstream out;
  out << to_string(r.method) << ',' << r.function << ',' << r.dims << ',' << r.n << ',' << r.trial << ','
      << format_double(r.final_error) << ',' << format_double(r.wall_time) << ',' << r.evaluations;
  return out.str();
}

std::optional<TrialRecord> parse_record_csv(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line, ',');
  if (f.size() != 8) return std::nullopt;
  TrialRecord r;
  const auto method = parse_method(f[0]);
  const auto dims = parse_unsigned<std::size_t>(f[2]);
  const auto n = parse_unsigned<std::size_t>(f[3]);
  const auto trial = parse_unsigned<std::uint64_t>(f[4]);
  const auto error = parse_double(f[5]);
  const auto time = parse_double(f[6]);
  const auto evals = parse_unsigned<std::size_t>(f[7]);
  if (!method || f[1].empty() || !dims || !n || !trial || !error || !time || !evals) return std::nullopt;
  r.method = *method;
  r.function = std::string(f[1]);
  r.dims = *dims;
  r.n = *n;
  r.trial = *trial;
  r.final_error = *error;
  r.wall_time = *time;
  r.evaluations = *evals;
  return r;
}

std::string record_to_json(const TrialRecord& r) {
  json j = {{"method", to_string(r.method)},
            {"function", r.function},
            {"dims", r.dims},
            {"n", r.n},
            {"trial", r.trial},
            {"final_error", json_number(r.final_error)},
            {"wall_time", r.wall_time},
            {"evaluations", r.evaluations}};
  return j.dump();
}

void write_records_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) out << record_to_csv(r) << '\n';
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("method,", 0) == 0) continue;
    if (auto r = parse_record_csv(line)) out.push_back(std::move(*r));
  }
  return out;
}

namespace {

json summary_json(const ComparisonSummary& s) {
  return {{"n", s.n},
          {"dims", s.dims},
          {"functions", s.functions},
          {"trials", s.trials},
          {"hds_gm_error", json_number(s.hds_gm_error)},
          {"sobol_gm_error", json_number(s.sobol_gm_error)},
          {"ratio", json_number(s.ratio)},
          {"p_value", s.p_value},
          {"ci95_low", json_number(s.ci95_low)},
          {"ci95_high", json_number(s.ci95_high)},
          {"runtime_ratio", json_number(s.runtime_ratio)}};
}

}  // namespace

std::string summary_to_json(const ComparisonSummary& summary) { return summary_json(summary).dump(); }

std::string summaries_to_json(std::span<const ComparisonSummary> summaries) {
  json arr = json::array();
  for (const auto& s : summaries) arr.push_back(summary_json(s));
  return arr.dump(2);
}

std::string report_table(std::span<const ComparisonSummary> summaries) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%6s %5s %12s %12s %7s %10s %18s %9s\n", "N", "D", "HDS Err.",
                "Sobol Err.", "Ratio", "p-Val", "CI95", "TimeRat.");
  out << line;
  for (const auto& s : summaries) {
    char ci[64];
    std::snprintf(ci, sizeof(ci), "(%.2f, %.2f)", s.ci95_low, s.ci95_high);
    std::snprintf(line, sizeof(line), "%6zu %5zu %12.2e %12.2e %7.2f %10.1e %18s %9.2f\n", s.n, s.dims,
                  s.hds_gm_error, s.sobol_gm_error, s.ratio, s.p_value, ci, s.runtime_ratio);
    out << line;
  }
  return out.str();
}

std::string discrepancy_to_json(const DiscrepancyReport& report) {
  json j = {{"metric", to_string(report.metric)},
            {"value", report.value},
            {"n", report.n},
            {"dims", report.dims}};
  return j.dump();
}

}  // namespace hds
