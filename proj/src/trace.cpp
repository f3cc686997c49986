#include "prefixsel/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "prefixsel/error.hpp"

namespace prefixsel {

void TimeGrid::validate() const {
    if (bin_length <= 0) throw DataError("bin length must be positive");
    if (bin_count == 0) throw DataError("bin count must be positive");
}

HourlyTraceMatrix HourlyTraceMatrix::from_series(const TimeGrid& grid,
                                                 std::map<PrefixId, std::vector<std::uint64_t>> series) {
    grid.validate();
    HourlyTraceMatrix m;
    m.grid_ = grid;
    m.totals_.assign(grid.bin_count, 0);
    for (auto& [prefix, values] : series) {
        if (values.size() != grid.bin_count) {
            throw DataError("series for " + prefix.text() + " has " + std::to_string(values.size()) +
                            " bins, expected " + std::to_string(grid.bin_count));
        }
        if (std::all_of(values.begin(), values.end(), [](std::uint64_t v) { return v == 0; })) continue;
        m.prefixes_.push_back(prefix);
        m.volumes_.insert(m.volumes_.end(), values.begin(), values.end());
        for (std::uint32_t h = 0; h < grid.bin_count; ++h) m.totals_[h] += values[h];
    }
    m.total_volume_ = std::accumulate(m.totals_.begin(), m.totals_.end(), std::uint64_t{0});
    return m;
}

std::optional<std::size_t> HourlyTraceMatrix::find(const PrefixId& p) const {
    const auto it = std::lower_bound(prefixes_.begin(), prefixes_.end(), p);
    if (it == prefixes_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - prefixes_.begin());
}

std::uint64_t HourlyTraceMatrix::prefix_volume(std::size_t i) const {
    const auto s = series(i);
    return std::accumulate(s.begin(), s.end(), std::uint64_t{0});
}

HourlyTraceMatrix HourlyTraceMatrix::truncated_after(std::uint32_t bin) const {
    std::map<PrefixId, std::vector<std::uint64_t>> out;
    for (std::size_t i = 0; i < prefixes_.size(); ++i) {
        const auto s = series(i);
        std::vector<std::uint64_t> values(s.begin(), s.end());
        std::fill(values.begin() + std::min(bin, grid_.bin_count), values.end(), 0);
        out.emplace(prefixes_[i], std::move(values));
    }
    return from_series(grid_, std::move(out));
}

TraceBinner::TraceBinner(TimeGrid grid, RejectPolicy policy) : grid_(grid), policy_(policy) { grid_.validate(); }

void TraceBinner::reject(bool malformed, std::uint64_t bytes, const std::string& why) {
    if (policy_ == RejectPolicy::abort) throw DataError("rejected record " + std::to_string(summary_.records_read) + ": " + why);
    (malformed ? summary_.rejected_malformed : summary_.rejected_out_of_range) += 1;
    summary_.bytes_rejected += bytes;
}

void TraceBinner::add(const TraceRecord& record) {
    ++summary_.records_read;
    summary_.bytes_in += record.volume;
    if (!grid_.contains(record.timestamp)) {
        reject(false, record.volume, "timestamp " + std::to_string(record.timestamp) + " outside the grid");
        return;
    }
    auto& values = series_[record.prefix];
    if (values.empty()) values.assign(grid_.bin_count, 0);
    values[grid_.bin_of(record.timestamp)] += record.volume;
    ++summary_.records_binned;
    summary_.bytes_binned += record.volume;
}

void TraceBinner::add(std::int64_t timestamp, std::string_view prefix, std::int64_t bytes) {
    auto parsed = PrefixId::try_parse(prefix);
    if (!parsed || bytes < 0) {
        ++summary_.records_read;
        const auto counted = bytes < 0 ? std::uint64_t{0} : static_cast<std::uint64_t>(bytes);
        summary_.bytes_in += counted;
        reject(true, counted, !parsed ? "malformed prefix '" + std::string(prefix) + "'" : "negative volume");
        return;
    }
    add(TraceRecord{timestamp, *std::move(parsed), static_cast<std::uint64_t>(bytes)});
}

HourlyTraceMatrix TraceBinner::finish() {
    auto m = HourlyTraceMatrix::from_series(grid_, std::move(series_));
    series_.clear();
    summary_.active_prefixes = m.prefix_count();
    return m;
}

HourlyTraceMatrix bin_records(std::span<const TraceRecord> records, const TimeGrid& grid, RejectPolicy policy,
                              IngestSummary* summary) {
    TraceBinner binner(grid, policy);
    for (const auto& r : records) binner.add(r);
    auto m = binner.finish();
    if (summary) *summary = binner.summary();
    return m;
}

double weekly_volume_fraction(const HourlyTraceMatrix& m, std::size_t prefix_index) {
    if (m.total_volume() == 0) throw DataError("degenerate trace: total volume is zero");
    return static_cast<double>(m.prefix_volume(prefix_index)) / static_cast<double>(m.total_volume());
}

double weekly_volume_fraction(const HourlyTraceMatrix& m, const PrefixId& p) {
    const auto i = m.find(p);
    if (!i) throw DataError("prefix " + p.text() + " is not in the trace");
    return weekly_volume_fraction(m, *i);
}

double generalized_harmonic(std::uint64_t n, double s) {
    // Smallest terms first.
    double sum = 0.0;
    for (std::uint64_t k = n; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    return sum;
}

double zipf_share(std::uint64_t k, double s, std::uint64_t n) {
    if (k == 0 || k > n) throw std::out_of_range("zipf rank out of range");
    return std::pow(static_cast<double>(k), -s) / generalized_harmonic(n, s);
}

void SyntheticTraceSpec::validate() const {
    if (prefix_count == 0) throw DataError("synthetic trace needs at least one prefix");
    if (!(zipf_s > 0.0)) throw DataError("zipf exponent must be positive");
    if (bin_total == 0) throw DataError("bin total must be positive");
    if (!(diurnal_amplitude >= 0.0 && diurnal_amplitude < 1.0)) throw DataError("diurnal amplitude must be in [0, 1)");
    if (!(noise_sigma >= 0.0)) throw DataError("noise sigma must be non-negative");
    for (const auto& b : bursts) {
        if (b.rank == 0 || b.rank > prefix_count) throw DataError("burst rank out of range");
        if (!(b.multiplier >= 1.0)) throw DataError("burst multiplier must be >= 1");
    }
}

HourlyTraceMatrix synthesize_trace(const SyntheticTraceSpec& spec, const TimeGrid& grid) {
    spec.validate();
    grid.validate();
    for (const auto& b : spec.bursts) {
        if (b.bin >= grid.bin_count) throw DataError("burst bin outside the grid");
    }
    const std::size_t n = spec.prefix_count;
    const std::uint32_t bins = grid.bin_count;

    const double harmonic = generalized_harmonic(n, spec.zipf_s);
    std::vector<double> base(n);
    for (std::size_t k = 0; k < n; ++k) {
        base[k] = static_cast<double>(spec.bin_total) * std::pow(static_cast<double>(k + 1), -spec.zipf_s) / harmonic;
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<double> phase(n, 0.0);
    std::uniform_real_distribution<double> phase_dist(0.0, 24.0);
    for (auto& p : phase) p = phase_dist(rng);

    std::vector<std::vector<std::uint64_t>> volumes(n, std::vector<std::uint64_t>(bins, 0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> target(n);
    std::vector<double> remainder(n);
    std::vector<std::uint32_t> order(n);
    const double two_pi = 2.0 * std::numbers::pi;

    for (std::uint32_t h = 0; h < bins; ++h) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double x = base[k];
            if (spec.diurnal_amplitude > 0.0) {
                x *= 1.0 + spec.diurnal_amplitude * std::sin(two_pi * (static_cast<double>(h) + phase[k]) / 24.0);
            }
            if (spec.noise_sigma > 0.0) {
                const double z = gauss(rng);
                x *= std::exp(spec.noise_sigma * z - 0.5 * spec.noise_sigma * spec.noise_sigma);
            }
            target[k] = x;
        }
        for (const auto& b : spec.bursts) {
            if (b.bin == h) target[b.rank - 1] *= b.multiplier;
        }
        for (std::size_t k = 0; k < n; ++k) sum += target[k];

        // Largest-remainder apportionment of round(sum) units.
        const auto units = static_cast<std::uint64_t>(std::llround(sum));
        std::uint64_t assigned = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double fl = std::floor(target[k]);
            volumes[k][h] = static_cast<std::uint64_t>(fl);
            remainder[k] = target[k] - fl;
            assigned += volumes[k][h];
        }
        std::uint64_t extra = units > assigned ? units - assigned : 0;
        if (extra > 0) {
            std::iota(order.begin(), order.end(), 0u);
            const auto cut = static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(extra, n));
            std::partial_sort(order.begin(), order.begin() + cut, order.end(), [&](std::uint32_t a, std::uint32_t b) {
                return remainder[a] != remainder[b] ? remainder[a] > remainder[b] : a < b;
            });
            for (std::ptrdiff_t i = 0; i < cut; ++i) volumes[order[i]][h] += 1;
        }
    }

    std::map<PrefixId, std::vector<std::uint64_t>> series;
    for (std::size_t k = 0; k < n; ++k) series.emplace(PrefixId::synthetic(static_cast<std::uint32_t>(k + 1)), std::move(volumes[k]));
    return HourlyTraceMatrix::from_series(grid, std::move(series));
}

HourlyTraceMatrix inject_burst(const HourlyTraceMatrix& m, const PrefixId& p, std::uint32_t bin, double fraction) {
    if (bin >= m.bin_count()) throw DataError("burst bin outside the grid");
    if (!(fraction > 0.0 && fraction < 1.0)) throw DataError("burst fraction must be in (0, 1)");
    std::map<PrefixId, std::vector<std::uint64_t>> series;
    for (std::size_t i = 0; i < m.prefix_count(); ++i) {
        const auto s = m.series(i);
        series.emplace(m.prefix(i), std::vector<std::uint64_t>(s.begin(), s.end()));
    }
    auto& target = series[p];
    if (target.empty()) target.assign(m.bin_count(), 0);
    const std::uint64_t others = m.total(bin) - target[bin];
    target[bin] = static_cast<std::uint64_t>(std::llround(fraction / (1.0 - fraction) * static_cast<double>(others)));
    return HourlyTraceMatrix::from_series(m.grid(), std::move(series));
}

}  // namespace prefixsel
