#include "prefixsel/dynamism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kernels.hpp"
#include "prefixsel/error.hpp"
#include "prefixsel/stats.hpp"

namespace prefixsel {

double CoreProfile::max_beta() const noexcept {
    double best = 0.0;
    for (const auto& b : betas) best = std::max(best, b.value);
    return best;
}

double CoreProfile::max_bi() const noexcept {
    return bi.empty() ? 0.0 : *std::max_element(bi.begin(), bi.end());
}

double coefficient_of_variation(std::span<const double> series) {
    if (series.size() < 2) throw DataError("coefficient of variation needs at least two values");
    const double n = static_cast<double>(series.size());
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
    if (mean == 0.0) throw DataError("coefficient of variation undefined for a zero-mean series");
    double ss = 0.0;
    for (double v : series) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / n) / std::abs(mean);
}

double coefficient_of_variation(std::span<const std::uint64_t> series) {
    std::vector<double> values(series.begin(), series.end());
    return coefficient_of_variation(std::span<const double>(values));
}

std::vector<std::uint32_t> core_indices(std::span<const std::uint64_t> volumes, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw DataError("core threshold must be in (0, 1]");
    std::vector<std::uint32_t> order;
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < volumes.size(); ++i) {
        if (volumes[i] == 0) continue;
        order.push_back(i);
        total += volumes[i];
    }
    if (total == 0) return {};
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return volumes[a] != volumes[b] ? volumes[a] > volumes[b] : a < b;
    });
    const double needed = threshold * static_cast<double>(total);
    std::uint64_t cumulative = 0;
    std::size_t count = 0;
    while (count < order.size()) {
        cumulative += volumes[order[count++]];
        if (static_cast<double>(cumulative) >= needed) break;
    }
    order.resize(count);
    return order;
}

std::vector<PrefixId> core_set(const std::map<PrefixId, std::uint64_t>& hour_volumes, double threshold) {
    // std::map iterates in canonical text order, so index order is the tie-break.
    std::vector<PrefixId> keys;
    std::vector<std::uint64_t> volumes;
    keys.reserve(hour_volumes.size());
    volumes.reserve(hour_volumes.size());
    for (const auto& [p, v] : hour_volumes) {
        keys.push_back(p);
        volumes.push_back(v);
    }
    std::vector<PrefixId> out;
    for (auto i : core_indices(volumes, threshold)) out.push_back(keys[i]);
    return out;
}

double core_presence_intensity(std::span<const std::uint8_t> cp) {
    if (cp.empty()) throw DataError("core presence window must be non-empty");
    std::size_t ones = 0;
    for (auto v : cp) ones += v != 0;
    return static_cast<double>(ones) / static_cast<double>(cp.size());
}

double burstiness_beta(double icp, double vp, double log_base) { return detail::beta_for(icp, vp, log_base); }

namespace detail {

double beta_for(double icp, double vp, double log_base) {
    if (!(icp > 0.0) || icp >= 1.0 || !(vp > 0.0)) return 0.0;
    return -std::log(icp) / std::log(log_base) * vp;
}

}  // namespace detail

CoreProfile compute_core_profile(const HourlyTraceMatrix& m, double threshold, BurstinessOptions options, Exec exec) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw DataError("core threshold must be in (0, 1]");
    if (!(options.log_base > 0.0) || options.log_base == 1.0) throw DataError("log base must be positive and != 1");
    return exec == Exec::serial ? serial::core_profile(m, threshold, options.log_base)
                                : omp::core_profile(m, threshold, options.log_base);
}

double burstiness_index(const CoreProfile& profile, const HourlyTraceMatrix& m, std::uint32_t bin) {
    detail::validate_profile_for(m, profile);
    if (bin >= m.bin_count()) throw DataError("bin outside the grid");
    const double total = static_cast<double>(m.total(bin));
    double bi = 0.0;
    for (auto i : profile.cores[bin]) {
        bi += burstiness_beta(profile.icp[i], 100.0 * static_cast<double>(m.volume(i, bin)) / total, profile.log_base);
    }
    return bi;
}

ConcentrationCurve concentration_curve(const HourlyTraceMatrix& m, const CurveSpan& span, double reference_s,
                                       std::uint64_t reference_n) {
    std::uint32_t first = 0;
    std::uint32_t last = m.bin_count();
    if (const auto* h = std::get_if<HourSpan>(&span)) {
        first = h->bin;
        last = h->bin + 1;
    } else if (const auto* d = std::get_if<DaySpan>(&span)) {
        first = d->first_bin;
        last = d->first_bin + 24;
    }
    if (first >= last || last > m.bin_count()) throw DataError("curve span outside the grid");

    std::vector<std::uint64_t> volumes;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < m.prefix_count(); ++i) {
        const auto s = m.series(i);
        const auto v = std::accumulate(s.begin() + first, s.begin() + last, std::uint64_t{0});
        if (v > 0) volumes.push_back(v);
        total += v;
    }
    if (total == 0) throw DataError("zero-volume span");
    std::sort(volumes.begin(), volumes.end(), std::greater<>());

    ConcentrationCurve c;
    c.reference_s = reference_s;
    c.reference_n = reference_n;
    const double harmonic = generalized_harmonic(reference_n, reference_s);
    std::uint64_t cumulative = 0;
    for (std::size_t r = 0; r < volumes.size(); ++r) {
        cumulative += volumes[r];
        c.shares.push_back(static_cast<double>(volumes[r]) / static_cast<double>(total));
        c.cdf.push_back(static_cast<double>(cumulative) / static_cast<double>(total));
        c.reference.push_back(r < reference_n ? std::pow(static_cast<double>(r + 1), -reference_s) / harmonic : 0.0);
    }
    return c;
}

std::size_t volume_bin_index(double weekly_fraction) {
    const double pct = 100.0 * weekly_fraction;
    static constexpr double edges[] = {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
    std::size_t bin = 0;
    for (double e : edges) {
        if (pct >= e) ++bin;
    }
    return bin;
}

namespace {

std::vector<VolumeBin> bin_statistic(const HourlyTraceMatrix& m, const std::vector<double>& stat) {
    std::vector<VolumeBin> bins(kVolumeBinCount);
    bins[0] = {0.0, 1e-4, true, 0, std::nullopt};
    double lower = 1e-4;
    for (std::size_t b = 1; b < kVolumeBinCount; ++b, lower *= 10.0) {
        bins[b].lower_pct = lower;
        bins[b].upper_pct = lower * 10.0;
    }
    bins[kVolumeBinCount - 1].lower_pct = 10.0;
    bins[kVolumeBinCount - 1].upper_pct = 100.0;

    std::vector<std::vector<double>> members(kVolumeBinCount);
    for (std::size_t i = 0; i < m.prefix_count(); ++i) {
        members[volume_bin_index(weekly_volume_fraction(m, i))].push_back(stat[i]);
    }
    for (std::size_t b = 0; b < kVolumeBinCount; ++b) {
        bins[b].count = members[b].size();
        if (members[b].empty()) continue;
        const auto box = boxplot_summary(members[b]);
        bins[b].stats = QuartileStats{box.mean, box.median, box.p25, box.p75};
    }
    return bins;
}

}  // namespace

std::vector<VolumeBin> cv_vs_volume_bins(const HourlyTraceMatrix& m) {
    if (m.total_volume() == 0) throw DataError("degenerate trace: total volume is zero");
    std::vector<double> cv(m.prefix_count());
    for (std::size_t i = 0; i < m.prefix_count(); ++i) cv[i] = coefficient_of_variation(m.series(i));
    return bin_statistic(m, cv);
}

std::vector<VolumeBin> icp_vs_volume_bins(const HourlyTraceMatrix& m, const CoreProfile& profile) {
    detail::validate_profile_for(m, profile);
    if (m.total_volume() == 0) throw DataError("degenerate trace: total volume is zero");
    return bin_statistic(m, profile.icp);
}

std::size_t active_prefixes_in_bin(const HourlyTraceMatrix& m, std::uint32_t bin) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < m.prefix_count(); ++i) n += m.volume(i, bin) != 0;
    return n;
}

CoreStatistics core_statistics(const CoreProfile& profile, const HourlyTraceMatrix& m) {
    detail::validate_profile_for(m, profile);
    CoreStatistics s;
    std::size_t live_bins = 0;
    for (std::uint32_t h = 0; h < profile.bin_count; ++h) {
        const auto active = active_prefixes_in_bin(m, h);
        if (active == 0) continue;
        const auto size = profile.cores[h].size();
        ++live_bins;
        s.avg_core_size += static_cast<double>(size);
        s.avg_core_pct_of_active += 100.0 * static_cast<double>(size) / static_cast<double>(active);
        s.max_core_size = std::max(s.max_core_size, size);
    }
    if (live_bins == 0) throw DataError("degenerate trace: no active bins");
    s.avg_core_size /= static_cast<double>(live_bins);
    s.avg_core_pct_of_active /= static_cast<double>(live_bins);
    return s;
}

BurstStatistics burst_statistics(const CoreProfile& profile) {
    BurstStatistics s;
    if (!profile.bi.empty()) s.mean_bi = mean_of(profile.bi);
    s.max_bi = profile.max_bi();
    s.max_beta = profile.max_beta();
    return s;
}

namespace detail {

void validate_profile_for(const HourlyTraceMatrix& m, const CoreProfile& profile) {
    if (profile.bin_count != m.bin_count() || profile.prefix_count != m.prefix_count()) {
        throw DataError("core profile was computed over a different trace");
    }
}

}  // namespace detail

}  // namespace prefixsel
