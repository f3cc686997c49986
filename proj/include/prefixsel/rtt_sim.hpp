#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefixsel/exec.hpp"
#include "prefixsel/prefix.hpp"

namespace prefixsel {

struct TransitId {
    std::string label;

    friend bool operator==(const TransitId&, const TransitId&) = default;
    friend auto operator<=>(const TransitId&, const TransitId&) = default;
};

struct ProbeSample {
    std::uint32_t tick = 0;
    PrefixId prefix;
    TransitId transit;
    std::optional<double> rtt_ms;  // absent: loss
};

/// Dense RTT cube indexed by (tick, prefix, transit). Transits and prefixes
/// are sorted; NaN marks a missing sample.
class ProbeLog {
public:
    ProbeLog() = default;
    ProbeLog(std::vector<TransitId> transits, std::vector<PrefixId> prefixes, std::uint32_t tick_count);

    /// Tick count is max tick + 1. Duplicate (tick, prefix, transit) or a
    /// non-positive RTT throws DataError.
    static ProbeLog from_samples(std::span<const ProbeSample> samples);

    const std::vector<TransitId>& transits() const noexcept { return transits_; }
    const std::vector<PrefixId>& prefixes() const noexcept { return prefixes_; }
    std::uint32_t tick_count() const noexcept { return tick_count_; }
    std::optional<std::size_t> transit_index(const TransitId& t) const;

    std::optional<double> rtt(std::uint32_t tick, std::size_t prefix, std::size_t transit) const {
        const double v = cube_[index(tick, prefix, transit)];
        return std::isnan(v) ? std::nullopt : std::optional<double>(v);
    }
    void set_rtt(std::uint32_t tick, std::size_t prefix, std::size_t transit, std::optional<double> rtt_ms);

    // Schedule metadata: seconds since the start of probing for each tick.
    std::vector<double>& tick_times() noexcept { return tick_times_; }
    const std::vector<double>& tick_times() const noexcept { return tick_times_; }

    std::vector<ProbeSample> samples() const;

private:
    std::size_t index(std::uint32_t tick, std::size_t prefix, std::size_t transit) const noexcept {
        return (static_cast<std::size_t>(tick) * prefixes_.size() + prefix) * transits_.size() + transit;
    }

    std::vector<TransitId> transits_;
    std::vector<PrefixId> prefixes_;
    std::uint32_t tick_count_ = 0;
    std::vector<double> cube_;
    std::vector<double> tick_times_;
};

struct NpPoint {
    std::uint32_t tick = 0;
    std::optional<double> np;  // absent: no included prefix (gap)
    std::size_t included = 0;
    std::size_t excluded = 0;
};

/// Mean over prefixes of RTT(transit) / min over physical transits. Prefixes
/// without a sample on `transit` at `tick` are excluded and counted.
NpPoint normalized_performance(const ProbeLog& log, std::size_t transit, std::uint32_t tick);

/// Transit with the smallest RTT for `prefix` at tick - 1 (ties: lowest
/// label). Without previous-round data the choice is uniform over transits,
/// drawn from a generator seeded by (seed, tick, prefix).
std::size_t l1r_choose(const ProbeLog& log, std::size_t prefix, std::uint32_t tick, std::uint64_t seed);

inline constexpr const char* kVirtualTransitLabel = "l1/r";

struct NpSeries {
    std::string transit;
    bool virtual_transit = false;
    std::vector<NpPoint> points;

    std::vector<double> values() const;  // gaps skipped
    std::size_t gaps() const;
    double completeness() const;  // included / (included + excluded)
};

/// NP series for every physical transit over all ticks.
std::vector<NpSeries> physical_np(const ProbeLog& log, Exec exec = Exec::parallel);

/// Virtual transit for ticks 1..tick_count-1; empty with fewer than two ticks.
NpSeries simulate_l1r(const ProbeLog& log, std::uint64_t seed, Exec exec = Exec::parallel);

struct ProbeScheduleSpec {
    double mean_interval = 240.0;
    double jitter = 0.30;
    double duration = 7 * 24 * 3600.0;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Multiplies one transit's RTT during [first_tick, last_tick].
struct RegimeSwitch {
    std::string transit;
    std::uint32_t first_tick = 0;
    std::uint32_t last_tick = 0;
    double multiplier = 1.0;
    std::optional<std::size_t> prefix;  // all prefixes when absent
};

struct RttModel {
    std::vector<PrefixId> prefixes;
    std::vector<TransitId> transits;
    std::vector<double> base_rtt_ms;  // per transit, same order as `transits`
    // Per-(prefix, transit) baseline factor drawn once, uniform in
    // [1 - spread, 1 + spread]. Gives each prefix a persistent best transit.
    double path_spread = 0.0;
    // Per-sample log-normal noise sigma.
    double noise_sigma = 0.0;
    double loss_probability = 0.0;
    std::vector<RegimeSwitch> regimes;

    void validate() const;
};

std::vector<double> probe_schedule(const ProbeScheduleSpec& spec);
ProbeLog generate_probe_log(const ProbeScheduleSpec& spec, const RttModel& model);

struct NpSummary {
    std::string transit;
    bool virtual_transit = false;
    double p5 = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double p75 = 0.0;
    double p95 = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t samples = 0;
};

/// Throws DataError on an empty series.
NpSummary np_summary(std::span<const double> series);

/// Summaries ordered by mean ascending (ties by label); empty series skipped.
std::vector<NpSummary> np_summaries(std::span<const NpSeries> series);

}  // namespace prefixsel
