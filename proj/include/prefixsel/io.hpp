#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefixsel/evaluation.hpp"
#include "prefixsel/rtt_sim.hpp"
#include "prefixsel/selectors.hpp"
#include "prefixsel/trace.hpp"

namespace prefixsel::io {

/// Shortest representation that round-trips.
std::string format_double(double v);

struct RawTraceRow {
    std::int64_t timestamp = 0;
    std::string prefix;
    std::int64_t bytes = 0;
    bool malformed = false;
};

/// Reads `timestamp,prefix,bytes`. A missing or wrong header throws
/// DataError; unparsable rows come back flagged as malformed.
std::vector<RawTraceRow> read_trace_csv(std::istream& in);

/// Feeds rows into a binner; malformed rows go through the reject policy.
HourlyTraceMatrix bin_rows(const std::vector<RawTraceRow>& rows, const TimeGrid& grid, RejectPolicy policy,
                           IngestSummary& summary);

/// `prefix,h1,...,hN`
void write_matrix_csv(std::ostream& out, const HourlyTraceMatrix& m);
HourlyTraceMatrix read_matrix_csv(std::istream& in, const TimeGrid& grid);

/// `hour,rank,prefix,score,method,L,K` (hour is 1-based)
void write_selection_csv(std::ostream& out, const SelectionRun& run, const HourlyTraceMatrix& m);
/// Rebuilds a run; bins without rows are empty selections.
SelectionRun read_selection_csv(std::istream& in, const HourlyTraceMatrix& m, const SelectorConfig& config,
                                double threshold, std::uint64_t total_volume);

/// `hour,coverage,churn` (churn is empty for the first selection)
void write_evaluation_csv(std::ostream& out, const EvaluationReport& report);

/// `tick,prefix,transit,rtt_ms`; every cell of the log is written, an empty
/// rtt_ms marks a loss.
void write_probe_csv(std::ostream& out, const ProbeLog& log);
ProbeLog read_probe_csv(std::istream& in);

/// `tick,transit,np,included_prefixes` (np empty for a gap)
void write_np_csv(std::ostream& out, std::span<const NpSeries> series);

std::vector<std::string> split(std::string_view line, char sep);

}  // namespace prefixsel::io
