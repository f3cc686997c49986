#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kernels.hpp"
#include "prefixsel/gm11.hpp"

namespace prefixsel::serial {

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

    std::vector<std::uint64_t> column(p.prefix_count);
    for (std::uint32_t h = 0; h < p.bin_count; ++h) {
        for (std::size_t i = 0; i < p.prefix_count; ++i) column[i] = m.volume(i, h);
        p.cores[h] = core_indices(column, threshold);
        for (auto i : p.cores[h]) p.presence[i * p.bin_count + h] = 1;
    }
    for (std::size_t i = 0; i < p.prefix_count; ++i) p.icp[i] = core_presence_intensity(p.cp_series(i));

    for (std::uint32_t h = 0; h < p.bin_count; ++h) {
        const double total = static_cast<double>(m.total(h));
        for (std::uint32_t i = 0; i < p.prefix_count; ++i) {
            const auto v = m.volume(i, h);
            if (v == 0) continue;
            const double beta = detail::beta_for(p.icp[i], 100.0 * static_cast<double>(v) / total, log_base);
            if (beta > 0.0) p.betas.push_back({i, h, beta});
            if (p.in_core(i, h)) p.bi[h] += beta;
        }
    }
    return p;
}

SelectionRun selection_run(const HourlyTraceMatrix& m, const CoreProfile& profile, const SelectorConfig& config) {
    SelectionRun run;
    run.config = config;
    run.threshold = profile.threshold;
    run.total_volume = m.total_volume();

    std::vector<std::uint64_t> vwin;
    std::vector<std::uint8_t> cwin;
    std::vector<double> dwin;
    for (std::uint32_t t = 1; t < m.bin_count(); ++t) {
        HourSelection hour;
        hour.bin = t;
        hour.effective_window = std::min(config.window, t);
        hour.warmup = hour.effective_window < config.window;
        const std::uint32_t first = t - hour.effective_window;

        std::vector<std::pair<double, std::uint32_t>> scored;
        for (std::uint32_t i = 0; i < m.prefix_count(); ++i) {
            const auto series = m.series(i).subspan(first, hour.effective_window);
            const auto cp = profile.cp_series(i).subspan(first, hour.effective_window);
            vwin.assign(series.begin(), series.end());
            cwin.assign(cp.begin(), cp.end());
            switch (config.method) {
                case Method::mv: {
                    const double s = score_mv(vwin);
                    if (s > 0.0) scored.emplace_back(s, i);
                    break;
                }
                case Method::icp: {
                    const double s = score_icp(cwin);
                    if (s > 0.0) scored.emplace_back(s, i);
                    break;
                }
                case Method::cv: {
                    const auto s = score_cv(cwin, vwin);
                    if (s && *s > 0.0) scored.emplace_back(*s, i);
                    break;
                }
                case Method::gm11: {
                    if (score_mv(vwin) == 0.0) break;
                    dwin.assign(series.begin(), series.end());
                    const auto f = gm11_forecast(dwin);
                    if (f.status != Gm11Status::fitted) ++hour.gm11_fallbacks;
                    if (f.value > 0.0) scored.emplace_back(f.value, i);
                    break;
                }
            }
        }
        detail::rank_top_k(scored, config.size, hour);
        run.hours.push_back(std::move(hour));
    }
    return run;
}

std::vector<NpSeries> physical_np(const ProbeLog& log) {
    std::vector<NpSeries> out;
    for (std::size_t x = 0; x < log.transits().size(); ++x) {
        NpSeries s;
        s.transit = log.transits()[x].label;
        for (std::uint32_t t = 0; t < log.tick_count(); ++t) s.points.push_back(normalized_performance(log, x, t));
        out.push_back(std::move(s));
    }
    return out;
}

NpSeries simulate_l1r(const ProbeLog& log, std::uint64_t seed) {
    NpSeries s;
    s.transit = kVirtualTransitLabel;
    s.virtual_transit = true;
    if (log.transits().empty()) return s;
    for (std::uint32_t t = 1; t < log.tick_count(); ++t) {
        NpPoint point;
        point.tick = t;
        double sum = 0.0;
        for (std::size_t p = 0; p < log.prefixes().size(); ++p) {
            const auto chosen = l1r_choose(log, p, t, seed);
            const auto rtt = log.rtt(t, p, chosen);
            if (!rtt) {
                ++point.excluded;
                continue;
            }
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t x = 0; x < log.transits().size(); ++x) {
                if (const auto r = log.rtt(t, p, x)) best = std::min(best, *r);
            }
            sum += *rtt / best;
            ++point.included;
        }
        if (point.included > 0) point.np = sum / static_cast<double>(point.included);
        s.points.push_back(point);
    }
    return s;
}

}  // namespace prefixsel::serial
