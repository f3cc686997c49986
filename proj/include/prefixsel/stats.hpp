#pragma once

#include <span>
#include <vector>

namespace prefixsel {

/// Linear interpolation between order statistics at position q * (n - 1).
/// `sorted` must be non-empty and ascending.
double percentile_sorted(std::span<const double> sorted, double q);

double mean_of(std::span<const double> values);

struct BoxSummary {
    double min = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double p75 = 0.0;
    double max = 0.0;
};

/// Throws DataError on an empty series.
BoxSummary boxplot_summary(std::span<const double> series);

}  // namespace prefixsel
