#include "prefixsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prefixsel/error.hpp"

namespace prefixsel {

double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw DataError("percentile of an empty series");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

double mean_of(std::span<const double> values) {
    if (values.empty()) throw DataError("mean of an empty series");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

BoxSummary boxplot_summary(std::span<const double> series) {
    if (series.empty()) throw DataError("boxplot summary of an empty series");
    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    BoxSummary s;
    s.min = sorted.front();
    s.max = sorted.back();
    s.p25 = percentile_sorted(sorted, 0.25);
    s.median = percentile_sorted(sorted, 0.5);
    s.p75 = percentile_sorted(sorted, 0.75);
    s.mean = mean_of(series);
    return s;
}

}  // namespace prefixsel
