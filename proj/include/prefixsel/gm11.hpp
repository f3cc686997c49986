#pragma once

#include <span>

namespace prefixsel {

enum class Gm11Status {
    fitted,
    short_window,  // fewer than kGm11MinPoints values: mean used instead
    degenerate,    // singular normal equations or non-finite forecast: mean used
};

inline constexpr std::size_t kGm11MinPoints = 4;

struct Gm11Fit {
    double a = 0.0;  // development coefficient
    double b = 0.0;  // grey input
    bool singular = false;
};

/// Least-squares fit of x0(k) + a * z1(k) = b, k = 2..n, where x1 is the
/// accumulated series and z1(k) = (x1(k) + x1(k - 1)) / 2.
Gm11Fit gm11_fit(std::span<const double> series);

struct Gm11Forecast {
    double value = 0.0;
    Gm11Status status = Gm11Status::fitted;
    Gm11Fit fit;
};

/// One-step-ahead forecast x0(n + 1), clamped at zero.
Gm11Forecast gm11_forecast(std::span<const double> series);

}  // namespace prefixsel
