#pragma once

// Test-only reference computations, written independently of the library
// code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "prefixsel/rtt_sim.hpp"
#include "prefixsel/trace.hpp"

namespace oracle {

/// Core by sort + prefix sum over (volume desc, key asc) pairs; returns keys.
inline std::vector<std::string> core(std::vector<std::pair<std::string, std::uint64_t>> hour, double threshold) {
    hour.erase(std::remove_if(hour.begin(), hour.end(), [](const auto& e) { return e.second == 0; }), hour.end());
    std::sort(hour.begin(), hour.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::uint64_t> prefix_sum(hour.size() + 1, 0);
    for (std::size_t i = 0; i < hour.size(); ++i) prefix_sum[i + 1] = prefix_sum[i] + hour[i].second;
    const double total = static_cast<double>(prefix_sum.back());
    std::vector<std::string> out;
    if (hour.empty()) return out;
    std::size_t n = 1;
    while (n < hour.size() && static_cast<double>(prefix_sum[n]) < threshold * total) ++n;
    for (std::size_t i = 0; i < n; ++i) out.push_back(hour[i].first);
    return out;
}

/// Population c_v in long double.
inline double cv(const std::vector<double>& s) {
    long double mean = 0;
    for (double v : s) mean += v;
    mean /= s.size();
    long double var = 0;
    for (double v : s) var += (v - mean) * (v - mean);
    var /= s.size();
    return static_cast<double>(std::sqrt(var) / mean);
}

struct Gm11Params {
    long double a = 0;
    long double b = 0;
};

/// Explicit normal equations B^T B [a b]^T = B^T Y with rows [-z1(k), 1],
/// solved by Cramer's rule in long double.
inline Gm11Params gm11_normal_equations(const std::vector<double>& x0) {
    std::vector<long double> x1(x0.size());
    long double acc = 0;
    for (std::size_t i = 0; i < x0.size(); ++i) x1[i] = acc += x0[i];
    long double s_zz = 0, s_z = 0, s_zy = 0, s_y = 0;
    const long double n = static_cast<long double>(x0.size() - 1);
    for (std::size_t k = 1; k < x0.size(); ++k) {
        const long double z = 0.5L * (x1[k] + x1[k - 1]);
        s_zz += z * z;
        s_z += z;
        s_zy += z * x0[k];
        s_y += x0[k];
    }
    // [ s_zz  -s_z ] [a]   [ -s_zy ]
    // [ -s_z   n   ] [b] = [  s_y  ]
    const long double det = s_zz * n - s_z * s_z;
    Gm11Params p;
    p.a = (-s_zy * n - (-s_z) * s_y) / det;
    p.b = (s_zz * s_y - (-s_z) * (-s_zy)) / det;
    return p;
}

inline long double gm11_forecast(const std::vector<double>& x0, const Gm11Params& p) {
    const long double n = static_cast<long double>(x0.size());
    return (x0[0] - p.b / p.a) * (1.0L - std::exp(p.a)) * std::exp(-p.a * n);
}

/// NP straight from the definition on a dense cube rtt[tick][prefix][transit].
using Cube = std::vector<std::vector<std::vector<std::optional<double>>>>;

inline std::optional<double> np(const Cube& rtt, std::size_t transit, std::size_t tick) {
    long double sum = 0;
    std::size_t used = 0;
    for (const auto& per_transit : rtt[tick]) {
        if (!per_transit[transit]) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : per_transit) {
            if (r) best = std::min(best, *r);
        }
        sum += *per_transit[transit] / best;
        ++used;
    }
    if (used == 0) return std::nullopt;
    return static_cast<double>(sum / used);
}

inline prefixsel::ProbeLog to_log(const Cube& rtt) {
    std::vector<prefixsel::ProbeSample> samples;
    for (std::uint32_t t = 0; t < rtt.size(); ++t) {
        for (std::size_t p = 0; p < rtt[t].size(); ++p) {
            for (std::size_t x = 0; x < rtt[t][p].size(); ++x) {
                // Transit labels "T0".."T9" sort like their indices.
                samples.push_back({t, prefixsel::PrefixId::synthetic(static_cast<std::uint32_t>(p + 1)),
                                   prefixsel::TransitId{"T" + std::to_string(x)}, rtt[t][p][x]});
            }
        }
    }
    return prefixsel::ProbeLog::from_samples(samples);
}

/// Random matrix: prefixes synthetic(1..n), volumes heavy-tailed with zeros.
inline prefixsel::HourlyTraceMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::uint32_t bins,
                                                  double zero_probability = 0.3) {
    std::map<prefixsel::PrefixId, std::vector<std::uint64_t>> series;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::lognormal_distribution<double> size(6.0, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint64_t> v(bins);
        for (auto& x : v) x = u(rng) < zero_probability ? 0 : static_cast<std::uint64_t>(size(rng)) + 1;
        series.emplace(prefixsel::PrefixId::synthetic(static_cast<std::uint32_t>(i + 1)), std::move(v));
    }
    prefixsel::TimeGrid grid;
    grid.bin_count = bins;
    return prefixsel::HourlyTraceMatrix::from_series(grid, std::move(series));
}

}  // namespace oracle
