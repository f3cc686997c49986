#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "prefixsel/dynamism.hpp"
#include "prefixsel/selectors.hpp"
#include "prefixsel/stats.hpp"
#include "prefixsel/trace.hpp"

namespace prefixsel {

/// Covered share of the bin's volume; 1 for a zero-volume bin.
double hourly_coverage(std::span<const std::uint32_t> selected, const HourlyTraceMatrix& m, std::uint32_t bin);

/// Size of the symmetric difference.
std::size_t churn(std::span<const std::uint32_t> previous, std::span<const std::uint32_t> next);
std::size_t churn(const std::unordered_set<PrefixId>& previous, const std::unordered_set<PrefixId>& next);

struct EvaluatedHour {
    std::uint32_t bin = 0;
    double coverage = 0.0;
    std::optional<std::size_t> churn;  // absent for the first selection
    bool warmup = false;
};

struct EvaluationReport {
    SelectorConfig config;
    double threshold = kDefaultCoreThreshold;
    std::vector<EvaluatedHour> hours;
    BoxSummary coverage;
    BoxSummary churn;
    std::size_t warmup_hours = 0;

    std::vector<double> coverage_series() const;
    std::vector<double> churn_series() const;
};

/// Throws DataError when the run was produced from a matrix with a different
/// total volume.
EvaluationReport evaluate_run(const SelectionRun& run, const HourlyTraceMatrix& m);

struct BiCoveragePoint {
    double bi = 0.0;
    double coverage = 0.0;
};

struct BiCoverageSeries {
    std::vector<BiCoveragePoint> mean_bi_vs_mean_coverage;
    std::vector<BiCoveragePoint> max_bi_vs_min_coverage;
};

/// One point per trace in each series. Reports must come from CV runs.
BiCoverageSeries bi_vs_coverage(std::span<const EvaluationReport> reports, std::span<const CoreProfile> profiles);

}  // namespace prefixsel
