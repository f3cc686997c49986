#include "prefixsel/rtt_sim.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "kernels.hpp"
#include "prefixsel/error.hpp"
#include "prefixsel/stats.hpp"

namespace prefixsel {

ProbeLog::ProbeLog(std::vector<TransitId> transits, std::vector<PrefixId> prefixes, std::uint32_t tick_count)
    : transits_(std::move(transits)), prefixes_(std::move(prefixes)), tick_count_(tick_count) {
    if (!std::is_sorted(transits_.begin(), transits_.end()) ||
        std::adjacent_find(transits_.begin(), transits_.end()) != transits_.end()) {
        throw DataError("probe log transits must be unique and sorted");
    }
    if (!std::is_sorted(prefixes_.begin(), prefixes_.end()) ||
        std::adjacent_find(prefixes_.begin(), prefixes_.end()) != prefixes_.end()) {
        throw DataError("probe log prefixes must be unique and sorted");
    }
    cube_.assign(static_cast<std::size_t>(tick_count_) * prefixes_.size() * transits_.size(),
                 std::numeric_limits<double>::quiet_NaN());
}

ProbeLog ProbeLog::from_samples(std::span<const ProbeSample> samples) {
    std::set<TransitId> transits;
    std::set<PrefixId> prefixes;
    std::uint32_t ticks = 0;
    for (const auto& s : samples) {
        transits.insert(s.transit);
        prefixes.insert(s.prefix);
        ticks = std::max(ticks, s.tick + 1);
    }
    ProbeLog log({transits.begin(), transits.end()}, {prefixes.begin(), prefixes.end()}, ticks);
    std::vector<std::uint8_t> seen(log.cube_.size(), 0);
    for (const auto& s : samples) {
        const auto p = static_cast<std::size_t>(
            std::lower_bound(log.prefixes_.begin(), log.prefixes_.end(), s.prefix) - log.prefixes_.begin());
        const auto x = *log.transit_index(s.transit);
        const auto idx = log.index(s.tick, p, x);
        if (seen[idx]) {
            throw DataError("duplicate probe sample for tick " + std::to_string(s.tick) + ", " + s.prefix.text() + ", " +
                            s.transit.label);
        }
        seen[idx] = 1;
        log.set_rtt(s.tick, p, x, s.rtt_ms);
    }
    return log;
}

std::optional<std::size_t> ProbeLog::transit_index(const TransitId& t) const {
    const auto it = std::lower_bound(transits_.begin(), transits_.end(), t);
    if (it == transits_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - transits_.begin());
}

void ProbeLog::set_rtt(std::uint32_t tick, std::size_t prefix, std::size_t transit, std::optional<double> rtt_ms) {
    if (tick >= tick_count_ || prefix >= prefixes_.size() || transit >= transits_.size()) {
        throw std::out_of_range("probe sample outside the log");
    }
    if (rtt_ms && !(*rtt_ms > 0.0 && std::isfinite(*rtt_ms))) throw DataError("RTT must be a positive number");
    cube_[index(tick, prefix, transit)] = rtt_ms ? *rtt_ms : std::numeric_limits<double>::quiet_NaN();
}

std::vector<ProbeSample> ProbeLog::samples() const {
    std::vector<ProbeSample> out;
    for (std::uint32_t t = 0; t < tick_count_; ++t) {
        for (std::size_t p = 0; p < prefixes_.size(); ++p) {
            for (std::size_t x = 0; x < transits_.size(); ++x) {
                if (auto r = rtt(t, p, x)) out.push_back({t, prefixes_[p], transits_[x], r});
            }
        }
    }
    return out;
}

NpPoint normalized_performance(const ProbeLog& log, std::size_t transit, std::uint32_t tick) {
    if (transit >= log.transits().size() || tick >= log.tick_count()) throw std::out_of_range("transit or tick outside the log");
    NpPoint point;
    point.tick = tick;
    double sum = 0.0;
    for (std::size_t p = 0; p < log.prefixes().size(); ++p) {
        const auto own = log.rtt(tick, p, transit);
        if (!own) {
            ++point.excluded;
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < log.transits().size(); ++x) {
            if (const auto r = log.rtt(tick, p, x)) best = std::min(best, *r);
        }
        sum += *own / best;
        ++point.included;
    }
    if (point.included > 0) point.np = sum / static_cast<double>(point.included);
    return point;
}

std::size_t l1r_choose(const ProbeLog& log, std::size_t prefix, std::uint32_t tick, std::uint64_t seed) {
    const std::size_t transits = log.transits().size();
    if (transits == 0) throw DataError("probe log has no transits");
    if (tick > 0) {
        std::optional<std::size_t> chosen;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < transits; ++x) {
            const auto r = log.rtt(tick - 1, prefix, x);
            if (r && *r < best) {
                best = *r;
                chosen = x;
            }
        }
        if (chosen) return *chosen;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tick,
                      static_cast<std::uint32_t>(prefix)};
    std::mt19937_64 rng(seq);
    return std::uniform_int_distribution<std::size_t>(0, transits - 1)(rng);
}

std::vector<double> NpSeries::values() const {
    std::vector<double> out;
    for (const auto& p : points) {
        if (p.np) out.push_back(*p.np);
    }
    return out;
}

std::size_t NpSeries::gaps() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const NpPoint& p) { return !p.np; }));
}

double NpSeries::completeness() const {
    std::size_t inc = 0;
    std::size_t all = 0;
    for (const auto& p : points) {
        inc += p.included;
        all += p.included + p.excluded;
    }
    return all == 0 ? 0.0 : static_cast<double>(inc) / static_cast<double>(all);
}

std::vector<NpSeries> physical_np(const ProbeLog& log, Exec exec) {
    return exec == Exec::serial ? serial::physical_np(log) : omp::physical_np(log);
}

NpSeries simulate_l1r(const ProbeLog& log, std::uint64_t seed, Exec exec) {
    return exec == Exec::serial ? serial::simulate_l1r(log, seed) : omp::simulate_l1r(log, seed);
}

void ProbeScheduleSpec::validate() const {
    if (!(mean_interval > 0.0)) throw DataError("probe interval must be positive");
    if (!(jitter >= 0.0 && jitter < 1.0)) throw DataError("probe jitter must be in [0, 1)");
    if (!(duration > 0.0)) throw DataError("probe duration must be positive");
}

void RttModel::validate() const {
    if (transits.empty()) throw DataError("RTT model needs at least one transit");
    if (prefixes.empty()) throw DataError("RTT model needs at least one prefix");
    if (base_rtt_ms.size() != transits.size()) throw DataError("one base RTT per transit is required");
    for (double b : base_rtt_ms) {
        if (!(b > 0.0)) throw DataError("base RTT must be positive");
    }
    if (!(path_spread >= 0.0 && path_spread < 1.0)) throw DataError("path spread must be in [0, 1)");
    if (!(noise_sigma >= 0.0)) throw DataError("noise sigma must be non-negative");
    if (!(loss_probability >= 0.0 && loss_probability <= 1.0)) throw DataError("loss probability must be in [0, 1]");
    for (const auto& r : regimes) {
        if (std::find(transits.begin(), transits.end(), TransitId{r.transit}) == transits.end()) {
            throw DataError("regime switch names unknown transit " + r.transit);
        }
        if (!(r.multiplier > 0.0)) throw DataError("regime multiplier must be positive");
        if (r.prefix && *r.prefix >= prefixes.size()) throw DataError("regime switch prefix out of range");
    }
}

std::vector<double> probe_schedule(const ProbeScheduleSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> gap(spec.mean_interval * (1.0 - spec.jitter),
                                               spec.mean_interval * (1.0 + spec.jitter));
    std::vector<double> times;
    for (double t = 0.0; t < spec.duration;) {
        times.push_back(t);
        t += spec.jitter == 0.0 ? spec.mean_interval : gap(rng);
    }
    return times;
}

ProbeLog generate_probe_log(const ProbeScheduleSpec& spec, const RttModel& model) {
    model.validate();
    const auto times = probe_schedule(spec);

    std::vector<std::size_t> prefix_order(model.prefixes.size());
    std::iota(prefix_order.begin(), prefix_order.end(), 0);
    std::sort(prefix_order.begin(), prefix_order.end(),
              [&](std::size_t a, std::size_t b) { return model.prefixes[a] < model.prefixes[b]; });
    std::vector<std::size_t> transit_order(model.transits.size());
    std::iota(transit_order.begin(), transit_order.end(), 0);
    std::sort(transit_order.begin(), transit_order.end(),
              [&](std::size_t a, std::size_t b) { return model.transits[a] < model.transits[b]; });

    std::vector<PrefixId> prefixes;
    for (auto i : prefix_order) prefixes.push_back(model.prefixes[i]);
    std::vector<TransitId> transits;
    for (auto i : transit_order) transits.push_back(model.transits[i]);
    ProbeLog log(std::move(transits), std::move(prefixes), static_cast<std::uint32_t>(times.size()));
    log.tick_times() = times;

    // Model indices are used for draws so sorting never changes the values.
    const std::size_t np = model.prefixes.size();
    const std::size_t nt = model.transits.size();
    std::seed_seq path_seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32), 1u};
    std::mt19937_64 path_rng(path_seq);
    std::uniform_real_distribution<double> spread(1.0 - model.path_spread, 1.0 + model.path_spread);
    std::vector<double> baseline(np * nt);
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t x = 0; x < nt; ++x) {
            baseline[p * nt + x] = model.base_rtt_ms[x] * (model.path_spread > 0.0 ? spread(path_rng) : 1.0);
        }
    }

    std::seed_seq sample_seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32), 2u};
    std::mt19937_64 rng(sample_seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::uint32_t t = 0; t < log.tick_count(); ++t) {
        for (std::size_t pi = 0; pi < np; ++pi) {
            const std::size_t p = prefix_order[pi];
            for (std::size_t xi = 0; xi < nt; ++xi) {
                const std::size_t x = transit_order[xi];
                const double u = unit(rng);
                const double z = gauss(rng);
                if (u < model.loss_probability) continue;
                double rtt = baseline[p * nt + x];
                if (model.noise_sigma > 0.0) rtt *= std::exp(model.noise_sigma * z);
                for (const auto& r : model.regimes) {
                    if (r.transit == model.transits[x].label && t >= r.first_tick && t <= r.last_tick &&
                        (!r.prefix || *r.prefix == p)) {
                        rtt *= r.multiplier;
                    }
                }
                log.set_rtt(t, pi, xi, rtt);
            }
        }
    }
    return log;
}

NpSummary np_summary(std::span<const double> series) {
    if (series.empty()) throw DataError("NP summary of an empty series");
    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    NpSummary s;
    s.p5 = percentile_sorted(sorted, 0.05);
    s.p25 = percentile_sorted(sorted, 0.25);
    s.median = percentile_sorted(sorted, 0.5);
    s.p75 = percentile_sorted(sorted, 0.75);
    s.p95 = percentile_sorted(sorted, 0.95);
    s.min = sorted.front();
    s.max = sorted.back();
    s.mean = mean_of(series);
    s.samples = series.size();
    return s;
}

std::vector<NpSummary> np_summaries(std::span<const NpSeries> series) {
    std::vector<NpSummary> out;
    for (const auto& s : series) {
        const auto values = s.values();
        if (values.empty()) continue;
        auto summary = np_summary(values);
        summary.transit = s.transit;
        summary.virtual_transit = s.virtual_transit;
        out.push_back(std::move(summary));
    }
    std::stable_sort(out.begin(), out.end(), [](const NpSummary& a, const NpSummary& b) {
        return a.mean != b.mean ? a.mean < b.mean : a.transit < b.transit;
    });
    return out;
}

}  // namespace prefixsel
