#include "prefixsel/gm11.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace prefixsel {

Gm11Fit gm11_fit(std::span<const double> series) {
    Gm11Fit fit;
    const std::size_t n = series.size();
    if (n < 3) {
        fit.singular = true;
        return fit;
    }
    // z1(k) for k = 2..n against x0(k)
    std::vector<double> z(n - 1);
    double cumulative = series[0];
    for (std::size_t k = 1; k < n; ++k) {
        const double previous = cumulative;
        cumulative += series[k];
        z[k - 1] = 0.5 * (cumulative + previous);
    }
    const auto y = series.subspan(1);
    const double m = static_cast<double>(z.size());
    const double z_mean = std::accumulate(z.begin(), z.end(), 0.0) / m;
    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double szz = 0.0;
    double szy = 0.0;
    double zz = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double dz = z[i] - z_mean;
        szz += dz * dz;
        szy += dz * (y[i] - y_mean);
        zz += z[i] * z[i];
    }
    if (!(szz > 1e-20 * zz)) {
        fit.singular = true;
        return fit;
    }
    fit.a = -szy / szz;
    fit.b = y_mean + fit.a * z_mean;
    return fit;
}

Gm11Forecast gm11_forecast(std::span<const double> series) {
    Gm11Forecast out;
    const double mean =
        series.empty() ? 0.0 : std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
    if (series.size() < kGm11MinPoints) {
        out.status = Gm11Status::short_window;
        out.value = std::max(0.0, mean);
        return out;
    }
    out.fit = gm11_fit(series);
    if (out.fit.singular) {
        out.status = Gm11Status::degenerate;
        out.value = std::max(0.0, mean);
        return out;
    }
    const double a = out.fit.a;
    const double b = out.fit.b;
    // (x0(1) - b/a)(1 - e^a) e^{-a n}, written to stay finite as a -> 0.
    const double growth = a == 0.0 ? 1.0 : std::expm1(a) / a;
    const double value = (-series[0] * std::expm1(a) + b * growth) * std::exp(-a * static_cast<double>(series.size()));
    if (!std::isfinite(value)) {
        out.status = Gm11Status::degenerate;
        out.value = std::max(0.0, mean);
        return out;
    }
    out.value = std::max(0.0, value);
    return out;
}

}  // namespace prefixsel
