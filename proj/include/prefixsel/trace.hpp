#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefixsel/prefix.hpp"

namespace prefixsel {

// Bin indices are 0-based in the library. Files and the CLI report
// 1-based hours (hour = bin + 1).
struct TimeGrid {
    std::int64_t start = 0;
    std::int64_t bin_length = 3600;
    std::uint32_t bin_count = 168;

    std::int64_t end() const noexcept { return start + bin_length * static_cast<std::int64_t>(bin_count); }
    bool contains(std::int64_t t) const noexcept { return t >= start && t < end(); }
    std::uint32_t bin_of(std::int64_t t) const noexcept {
        return static_cast<std::uint32_t>((t - start) / bin_length);
    }
    void validate() const;
};

struct TraceRecord {
    std::int64_t timestamp = 0;
    PrefixId prefix;
    std::uint64_t volume = 0;
};

/// Per-prefix volume series over a time grid. Prefixes are kept sorted by
/// canonical text, so prefix index order is also the tie-break order.
/// Immutable once built.
class HourlyTraceMatrix {
public:
    HourlyTraceMatrix() = default;

    /// Builds a matrix from per-prefix series. Every series must have
    /// grid.bin_count entries; all-zero series are dropped.
    static HourlyTraceMatrix from_series(const TimeGrid& grid,
                                         std::map<PrefixId, std::vector<std::uint64_t>> series);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t prefix_count() const noexcept { return prefixes_.size(); }
    std::uint32_t bin_count() const noexcept { return grid_.bin_count; }
    bool empty() const noexcept { return prefixes_.empty(); }

    const std::vector<PrefixId>& prefixes() const noexcept { return prefixes_; }
    const PrefixId& prefix(std::size_t i) const { return prefixes_.at(i); }
    std::optional<std::size_t> find(const PrefixId& p) const;

    std::span<const std::uint64_t> series(std::size_t i) const {
        return {volumes_.data() + i * grid_.bin_count, grid_.bin_count};
    }
    std::uint64_t volume(std::size_t i, std::uint32_t bin) const { return volumes_[i * grid_.bin_count + bin]; }

    std::uint64_t total(std::uint32_t bin) const { return totals_.at(bin); }
    std::span<const std::uint64_t> totals() const noexcept { return totals_; }
    std::uint64_t total_volume() const noexcept { return total_volume_; }
    std::uint64_t prefix_volume(std::size_t i) const;

    /// Copy with every bin at or after `bin` zeroed; prefixes left all-zero are dropped.
    HourlyTraceMatrix truncated_after(std::uint32_t bin) const;

private:
    TimeGrid grid_;
    std::vector<PrefixId> prefixes_;
    std::vector<std::uint64_t> volumes_;
    std::vector<std::uint64_t> totals_;
    std::uint64_t total_volume_ = 0;
};

enum class RejectPolicy { skip, abort };

struct IngestSummary {
    std::uint64_t records_read = 0;
    std::uint64_t records_binned = 0;
    std::uint64_t rejected_out_of_range = 0;
    std::uint64_t rejected_malformed = 0;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_binned = 0;
    std::uint64_t bytes_rejected = 0;
    std::size_t active_prefixes = 0;

    std::uint64_t records_rejected() const noexcept { return rejected_out_of_range + rejected_malformed; }
};

/// Single-writer fold of raw records into grid bins.
class TraceBinner {
public:
    explicit TraceBinner(TimeGrid grid, RejectPolicy policy = RejectPolicy::skip);

    void add(const TraceRecord& record);
    /// Raw row form: the prefix text is parsed here and a negative byte
    /// count counts as malformed.
    void add(std::int64_t timestamp, std::string_view prefix, std::int64_t bytes);

    const IngestSummary& summary() const noexcept { return summary_; }
    HourlyTraceMatrix finish();

private:
    void reject(bool malformed, std::uint64_t bytes, const std::string& why);

    TimeGrid grid_;
    RejectPolicy policy_;
    IngestSummary summary_;
    std::map<PrefixId, std::vector<std::uint64_t>> series_;
};

HourlyTraceMatrix bin_records(std::span<const TraceRecord> records, const TimeGrid& grid,
                              RejectPolicy policy = RejectPolicy::skip, IngestSummary* summary = nullptr);

/// Weekly share of one prefix: its total volume over the matrix total.
double weekly_volume_fraction(const HourlyTraceMatrix& m, const PrefixId& p);
double weekly_volume_fraction(const HourlyTraceMatrix& m, std::size_t prefix_index);

/// f(k, s, N) = (1/k^s) / sum_{n=1..N} 1/n^s
double zipf_share(std::uint64_t k, double s, std::uint64_t n);
double generalized_harmonic(std::uint64_t n, double s);

struct BurstSpec {
    std::uint32_t rank = 1;
    std::uint32_t bin = 0;
    double multiplier = 1.0;
};

struct SyntheticTraceSpec {
    std::uint32_t prefix_count = 1000;
    double zipf_s = 1.0;
    std::uint64_t bin_total = 1'000'000'000;
    // Per-prefix sine with a 24-bin period and a seeded random phase.
    double diurnal_amplitude = 0.0;
    std::vector<BurstSpec> bursts;
    // Multiplicative log-normal noise per (prefix, bin); 0 disables it.
    double noise_sigma = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Rank k maps to PrefixId::synthetic(k). Per-bin integer volumes are
/// apportioned by largest remainder so an unmodulated bin sums to bin_total.
HourlyTraceMatrix synthesize_trace(const SyntheticTraceSpec& spec, const TimeGrid& grid);

/// Sets `p`'s volume in `bin` so that it carries `fraction` of the new bin total.
HourlyTraceMatrix inject_burst(const HourlyTraceMatrix& m, const PrefixId& p, std::uint32_t bin, double fraction);

}  // namespace prefixsel
