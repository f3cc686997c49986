#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kernels.hpp"
#include "prefixsel/gm11.hpp"

namespace prefixsel {

int worker_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace prefixsel

namespace prefixsel::omp {

CoreProfile core_profile(const HourlyTraceMatrix& m, double threshold, double log_base) {
    CoreProfile p;
    p.threshold = threshold;
    p.log_base = log_base;
    p.bin_count = m.bin_count();
    p.prefix_count = m.prefix_count();
    p.cores.resize(p.bin_count);
    p.presence.assign(p.prefix_count * p.bin_count, 0);
    p.icp.assign(p.prefix_count, 0.0);
    p.bi.assign(p.bin_count, 0.0);

    const auto bins = static_cast<std::int64_t>(p.bin_count);
    const auto prefixes = static_cast<std::int64_t>(p.prefix_count);

#pragma omp parallel
    {
        std::vector<std::uint64_t> column(p.prefix_count);
#pragma omp for schedule(dynamic)
        for (std::int64_t h = 0; h < bins; ++h) {
            for (std::size_t i = 0; i < p.prefix_count; ++i) column[i] = m.volume(i, static_cast<std::uint32_t>(h));
            p.cores[h] = core_indices(column, threshold);
            for (auto i : p.cores[h]) p.presence[i * p.bin_count + h] = 1;
        }
    }

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < prefixes; ++i) p.icp[i] = core_presence_intensity(p.cp_series(i));

    std::vector<std::vector<BetaEntry>> per_bin(p.bin_count);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t hh = 0; hh < bins; ++hh) {
        const auto h = static_cast<std::uint32_t>(hh);
        const double total = static_cast<double>(m.total(h));
        double bi = 0.0;
        for (std::uint32_t i = 0; i < p.prefix_count; ++i) {
            const auto v = m.volume(i, h);
            if (v == 0) continue;
            const double beta = detail::beta_for(p.icp[i], 100.0 * static_cast<double>(v) / total, log_base);
            if (beta > 0.0) per_bin[h].push_back({i, h, beta});
            if (p.in_core(i, h)) bi += beta;
        }
        p.bi[h] = bi;
    }
    for (auto& b : per_bin) p.betas.insert(p.betas.end(), b.begin(), b.end());
    return p;
}

SelectionRun selection_run(const HourlyTraceMatrix& m, const CoreProfile& profile, const SelectorConfig& config) {
    SelectionRun run;
    run.config = config;
    run.threshold = profile.threshold;
    run.total_volume = m.total_volume();
    const std::uint32_t bins = m.bin_count();
    const std::size_t n = m.prefix_count();
    if (bins < 2) return run;

    // Prefix sums per prefix: volume, core presence count, core-masked volume.
    const std::size_t stride = bins + 1;
    std::vector<std::uint64_t> vsum(n * stride, 0);
    std::vector<std::uint32_t> csum(n * stride, 0);
    std::vector<std::uint64_t> cvsum(n * stride, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const auto s = m.series(i);
        const auto cp = profile.cp_series(i);
        for (std::uint32_t h = 0; h < bins; ++h) {
            vsum[i * stride + h + 1] = vsum[i * stride + h] + s[h];
            csum[i * stride + h + 1] = csum[i * stride + h] + cp[h];
            cvsum[i * stride + h + 1] = cvsum[i * stride + h] + (cp[h] ? s[h] : 0);
        }
    }

    run.hours.resize(bins - 1);
#pragma omp parallel
    {
        std::vector<std::pair<double, std::uint32_t>> scored;
        std::vector<double> window;
#pragma omp for schedule(dynamic)
        for (std::int64_t tt = 1; tt < static_cast<std::int64_t>(bins); ++tt) {
            const auto t = static_cast<std::uint32_t>(tt);
            HourSelection& hour = run.hours[t - 1];
            hour.bin = t;
            hour.effective_window = std::min(config.window, t);
            hour.warmup = hour.effective_window < config.window;
            const std::uint32_t first = t - hour.effective_window;
            const double len = hour.effective_window;

            scored.clear();
            for (std::uint32_t i = 0; i < n; ++i) {
                const std::size_t row = i * stride;
                const std::uint64_t volume = vsum[row + t] - vsum[row + first];
                const std::uint32_t presence = csum[row + t] - csum[row + first];
                switch (config.method) {
                    case Method::mv:
                        if (volume > 0) scored.emplace_back(static_cast<double>(volume) / len, i);
                        break;
                    case Method::icp:
                        if (presence > 0) scored.emplace_back(static_cast<double>(presence) / len, i);
                        break;
                    case Method::cv: {
                        const std::uint64_t masked = cvsum[row + t] - cvsum[row + first];
                        if (presence > 0 && masked > 0) scored.emplace_back(static_cast<double>(masked) / len, i);
                        break;
                    }
                    case Method::gm11: {
                        if (volume == 0) break;
                        const auto s = m.series(i).subspan(first, hour.effective_window);
                        window.assign(s.begin(), s.end());
                        const auto f = gm11_forecast(window);
                        if (f.status != Gm11Status::fitted) ++hour.gm11_fallbacks;
                        if (f.value > 0.0) scored.emplace_back(f.value, i);
                        break;
                    }
                }
            }
            detail::rank_top_k(scored, config.size, hour);
        }
    }
    return run;
}

std::vector<NpSeries> physical_np(const ProbeLog& log) {
    const std::size_t transits = log.transits().size();
    const std::size_t prefixes = log.prefixes().size();
    const std::uint32_t ticks = log.tick_count();
    std::vector<NpSeries> out(transits);
    for (std::size_t x = 0; x < transits; ++x) {
        out[x].transit = log.transits()[x].label;
        out[x].points.resize(ticks);
    }

#pragma omp parallel
    {
        std::vector<double> best(prefixes);
        std::vector<double> sum(transits);
#pragma omp for schedule(static)
        for (std::int64_t tt = 0; tt < static_cast<std::int64_t>(ticks); ++tt) {
            const auto t = static_cast<std::uint32_t>(tt);
            for (std::size_t p = 0; p < prefixes; ++p) {
                best[p] = std::numeric_limits<double>::infinity();
                for (std::size_t x = 0; x < transits; ++x) {
                    if (const auto r = log.rtt(t, p, x)) best[p] = std::min(best[p], *r);
                }
            }
            for (std::size_t x = 0; x < transits; ++x) {
                NpPoint& point = out[x].points[t];
                point.tick = t;
                double acc = 0.0;
                for (std::size_t p = 0; p < prefixes; ++p) {
                    const auto r = log.rtt(t, p, x);
                    if (!r) {
                        ++point.excluded;
                        continue;
                    }
                    acc += *r / best[p];
                    ++point.included;
                }
                if (point.included > 0) point.np = acc / static_cast<double>(point.included);
            }
        }
    }
    return out;
}

NpSeries simulate_l1r(const ProbeLog& log, std::uint64_t seed) {
    NpSeries s;
    s.transit = kVirtualTransitLabel;
    s.virtual_transit = true;
    const std::uint32_t ticks = log.tick_count();
    if (log.transits().empty() || ticks < 2) return s;
    s.points.resize(ticks - 1);

    // Choices depend only on the previous round, so ticks are independent.
#pragma omp parallel for schedule(static)
    for (std::int64_t tt = 1; tt < static_cast<std::int64_t>(ticks); ++tt) {
        const auto t = static_cast<std::uint32_t>(tt);
        NpPoint& point = s.points[t - 1];
        point.tick = t;
        double acc = 0.0;
        for (std::size_t p = 0; p < log.prefixes().size(); ++p) {
            const auto rtt = log.rtt(t, p, l1r_choose(log, p, t, seed));
            if (!rtt) {
                ++point.excluded;
                continue;
            }
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t x = 0; x < log.transits().size(); ++x) {
                if (const auto r = log.rtt(t, p, x)) best = std::min(best, *r);
            }
            acc += *rtt / best;
            ++point.included;
        }
        if (point.included > 0) point.np = acc / static_cast<double>(point.included);
    }
    return s;
}

}  // namespace prefixsel::omp
