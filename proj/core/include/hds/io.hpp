#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hds/de.hpp"
#include "hds/discrepancy.hpp"
#include "hds/matrix.hpp"
#include "hds/stats.hpp"

namespace hds {

/// Shortest decimal text that parses back to the same double ("inf", "nan" for non-finite).
std::string format_double(double value);

/// CSV with header x0..x{D-1}, one row per sample.
void write_samples_csv(std::ostream& out, const SampleMatrix& samples);
/// {"dims":D,"n":N,"frame":"unit|bounds","samples":[[...],...]}
void write_samples_json(std::ostream& out, const SampleMatrix& samples);
/// Reads a numeric CSV; a non-numeric first line is taken as a header.
/// Throws ConfigError on ragged or malformed rows.
SampleMatrix read_samples_csv(std::istream& in, Frame frame = Frame::Bounds);

inline constexpr std::string_view kRecordsHeader =
    "method,function,dims,n,trial,final_error,wall_time,evaluations";

std::string record_to_csv(const TrialRecord& record);
std::optional<TrialRecord> parse_record_csv(std::string_view line);
std::string record_to_json(const TrialRecord& record);

void write_records_csv(std::ostream& out, std::span<const TrialRecord> records);
/// Reads a records file, skipping the header and any malformed (e.g. truncated) line.
std::vector<TrialRecord> read_records_csv(std::istream& in);

std::string summary_to_json(const ComparisonSummary& summary);
std::string summaries_to_json(std::span<const ComparisonSummary> summaries);
/// Fixed-width table with columns N, D, HDS Err., Sobol Err., Ratio, p-Val, CI95.
std::string report_table(std::span<const ComparisonSummary> summaries);

std::string discrepancy_to_json(const DiscrepancyReport& report);

}  // namespace hds
