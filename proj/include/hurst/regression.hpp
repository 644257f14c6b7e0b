#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "error.hpp"

namespace hurst {

/// Ordinary least-squares line y = slope * x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double rss = 0.0;
    double r_squared = 0.0;
    std::size_t count = 0;

    [[nodiscard]] double at(double x) const noexcept { return slope * x + intercept; }
};

/// Two-pass OLS. Requires at least two points with distinct x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) {
        throw InputError("line fit needs at least two paired points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw InputError("line fit needs distinct abscissae");
    }

    LineFit fit;
    fit.count = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.at(x[i]);
        rss += r * r;
    }
    fit.rss = rss;
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - rss / syy) : 1.0;
    fit.slope_stderr = n > 2 ? std::sqrt(rss / static_cast<double>(n - 2) / sxx) : 0.0;
    return fit;
}

} // namespace hurst
