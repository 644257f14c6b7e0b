#pragma once

// Independent reference implementations shared by the unit and acceptance tests.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// Brute-force DFA written straight from the definition with 1-based indices
// and explicit 2x2 normal equations.
inline double brute_force_fluctuation(const std::vector<double>& x, std::size_t s)
{
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    std::vector<double> y(n + 1, 0.0); // y[1..n]
    for (std::size_t i = 1; i <= n; ++i) {
        y[i] = y[i - 1] + (x[i - 1] - mean);
    }
    const std::size_t ns = n / s;
    double total = 0.0;
    for (std::size_t v = 1; v <= 2 * ns; ++v) {
        std::vector<double> seg(s);
        for (std::size_t i = 1; i <= s; ++i) {
            const std::size_t idx = v <= ns ? (v - 1) * s + i : n - (v - ns) * s + i;
            seg[i - 1] = y[idx];
        }
        double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
        for (std::size_t i = 1; i <= s; ++i) {
            const double xi = static_cast<double>(i);
            s1 += 1;
            sx += xi;
            sxx += xi * xi;
            sy += seg[i - 1];
            sxy += xi * seg[i - 1];
        }
        const double det = s1 * sxx - sx * sx;
        const double b = (s1 * sxy - sx * sy) / det;
        const double a = (sxx * sy - sx * sxy) / det;
        double f2 = 0.0;
        for (std::size_t i = 1; i <= s; ++i) {
            const double r = seg[i - 1] - (a + b * static_cast<double>(i));
            f2 += r * r;
        }
        total += f2 / static_cast<double>(s);
    }
    return std::sqrt(total / static_cast<double>(2 * ns));
}

} // namespace oracle
