#include "prefixsel/evaluation.hpp"

#include <algorithm>
#include <iterator>

#include "prefixsel/error.hpp"

namespace prefixsel {

double hourly_coverage(std::span<const std::uint32_t> selected, const HourlyTraceMatrix& m, std::uint32_t bin) {
    if (bin >= m.bin_count()) throw DataError("bin outside the grid");
    const auto total = m.total(bin);
    if (total == 0) return 1.0;
    std::uint64_t covered = 0;
    for (auto i : selected) covered += m.volume(i, bin);
    return static_cast<double>(covered) / static_cast<double>(total);
}

std::size_t churn(std::span<const std::uint32_t> previous, std::span<const std::uint32_t> next) {
    std::vector<std::uint32_t> a(previous.begin(), previous.end());
    std::vector<std::uint32_t> b(next.begin(), next.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<std::uint32_t> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    return diff.size();
}

std::size_t churn(const std::unordered_set<PrefixId>& previous, const std::unordered_set<PrefixId>& next) {
    std::size_t n = 0;
    for (const auto& p : previous) n += !next.contains(p);
    for (const auto& p : next) n += !previous.contains(p);
    return n;
}

std::vector<double> EvaluationReport::coverage_series() const {
    std::vector<double> out;
    out.reserve(hours.size());
    for (const auto& h : hours) out.push_back(h.coverage);
    return out;
}

std::vector<double> EvaluationReport::churn_series() const {
    std::vector<double> out;
    for (const auto& h : hours) {
        if (h.churn) out.push_back(static_cast<double>(*h.churn));
    }
    return out;
}

EvaluationReport evaluate_run(const SelectionRun& run, const HourlyTraceMatrix& m) {
    if (run.total_volume != m.total_volume()) {
        throw DataError("selection run total volume " + std::to_string(run.total_volume) +
                        " disagrees with the trace total " + std::to_string(m.total_volume()));
    }
    if (run.hours.empty()) throw DataError("selection run has no evaluable hours");
    EvaluationReport report;
    report.config = run.config;
    report.threshold = run.threshold;
    const HourSelection* previous = nullptr;
    for (const auto& h : run.hours) {
        EvaluatedHour e;
        e.bin = h.bin;
        e.coverage = hourly_coverage(h.prefixes, m, h.bin);
        e.warmup = h.warmup;
        if (previous) e.churn = churn(previous->prefixes, h.prefixes);
        report.warmup_hours += h.warmup;
        report.hours.push_back(e);
        previous = &h;
    }
    report.coverage = boxplot_summary(report.coverage_series());
    const auto churns = report.churn_series();
    if (!churns.empty()) report.churn = boxplot_summary(churns);
    return report;
}

BiCoverageSeries bi_vs_coverage(std::span<const EvaluationReport> reports, std::span<const CoreProfile> profiles) {
    if (reports.size() != profiles.size()) throw DataError("one core profile per report is required");
    BiCoverageSeries out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (reports[i].config.method != Method::cv) throw DataError("BI versus coverage needs CV selection reports");
        const auto burst = burst_statistics(profiles[i]);
        out.mean_bi_vs_mean_coverage.push_back({burst.mean_bi, reports[i].coverage.mean});
        out.max_bi_vs_min_coverage.push_back({burst.max_bi, reports[i].coverage.min});
    }
    return out;
}

}  // namespace prefixsel
