#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "fft.hpp"
#include "random.hpp"
#include "series.hpp"

namespace hurst {

enum class NoiseKind { FractionalGaussian, FractionalBrownian, White };

inline std::string_view to_string(NoiseKind k) noexcept
{
    switch (k) {
    case NoiseKind::FractionalGaussian: return "fgn";
    case NoiseKind::FractionalBrownian: return "fbm";
    case NoiseKind::White: return "white";
    }
    return "unknown";
}

struct GeneratorSpec {
    double hurst = 0.5;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    NoiseKind kind = NoiseKind::FractionalGaussian;
};

/// Autocovariance of unit-variance fGn at lag k.
inline double fgn_autocovariance(double h, std::size_t k) noexcept
{
    const double two_h = 2.0 * h;
    const double kd = static_cast<double>(k);
    return 0.5 * (std::pow(kd + 1.0, two_h) - 2.0 * std::pow(kd, two_h) + std::pow(std::abs(kd - 1.0), two_h));
}

enum class SynthesisMethod { Auto, CirculantEmbedding, Levinson };

namespace detail {

inline std::vector<double> circulant_embedding(std::span<const double> acvf, std::size_t n,
                                               NormalSource& normal, bool& embedding_ok)
{
    // First row of the 2n circulant: g(0..n), g(n-1..1).
    const std::size_t m = 2 * n;
    std::vector<double> row(m);
    for (std::size_t k = 0; k <= n; ++k) {
        row[k] = acvf[k];
    }
    for (std::size_t k = 1; k < n; ++k) {
        row[m - k] = acvf[k];
    }
    const auto spectrum = fft::forward_real(row);

    double peak = 0.0;
    for (const auto& s : spectrum) {
        peak = std::max(peak, std::abs(s.real()));
    }
    std::vector<double> eig(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double lambda = spectrum[k].real();
        if (lambda < -1e-10 * peak) {
            embedding_ok = false;
            return {};
        }
        eig[k] = std::max(lambda, 0.0);
    }
    embedding_ok = true;

    const double md = static_cast<double>(m);
    std::vector<std::complex<double>> half(n + 1);
    half[0] = {std::sqrt(eig[0] / md) * normal(), 0.0};
    half[n] = {std::sqrt(eig[n] / md) * normal(), 0.0};
    for (std::size_t k = 1; k < n; ++k) {
        const double amp = std::sqrt(eig[k] / (2.0 * md));
        const double re = normal();
        const double im = normal();
        half[k] = {amp * re, amp * im};
    }
    auto full = fft::inverse_real(half, m);
    full.resize(n);
    return full;
}

/// Durbin-Levinson sequential conditional sampling, O(n^2).
inline std::vector<double> levinson(std::span<const double> acvf, std::size_t n, NormalSource& normal)
{
    std::vector<double> out(n);
    std::vector<double> phi(n, 0.0);
    std::vector<double> prev(n, 0.0);
    double v = acvf[0];
    if (!(v > 0.0)) {
        throw Error("synthesis failed, increase N");
    }
    out[0] = std::sqrt(v) * normal();
    for (std::size_t t = 1; t < n; ++t) {
        double num = acvf[t];
        for (std::size_t j = 1; j < t; ++j) {
            num -= prev[j] * acvf[t - j];
        }
        const double kappa = num / v;
        phi[t] = kappa;
        for (std::size_t j = 1; j < t; ++j) {
            phi[j] = prev[j] - kappa * prev[t - j];
        }
        v *= (1.0 - kappa * kappa);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error("synthesis failed, increase N");
        }
        double cond_mean = 0.0;
        for (std::size_t j = 1; j <= t; ++j) {
            cond_mean += phi[j] * out[t - j];
        }
        out[t] = cond_mean + std::sqrt(v) * normal();
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, prev.begin());
    }
    return out;
}

} // namespace detail

/// Draws a zero-mean stationary Gaussian sequence of length n with the given
/// autocovariance. `acvf` must hold lags 0..n (n+1 values).
inline std::vector<double> synthesize_gaussian(std::span<const double> acvf, std::size_t n, std::uint64_t seed,
                                               SynthesisMethod method = SynthesisMethod::Auto)
{
    if (n == 0) {
        throw InputError("length must be positive");
    }
    if (acvf.size() < n + 1) {
        throw InputError("autocovariance must cover lags 0..N");
    }
    NormalSource normal(seed);
    if (method != SynthesisMethod::Levinson) {
        bool ok = false;
        auto out = detail::circulant_embedding(acvf, n, normal, ok);
        if (ok) {
            return out;
        }
        if (method == SynthesisMethod::CirculantEmbedding) {
            throw Error("synthesis failed, increase N");
        }
        normal = NormalSource(seed);
    }
    return detail::levinson(acvf, n, normal);
}

namespace detail {

inline void validate(const GeneratorSpec& spec, NoiseKind expected)
{
    if (spec.kind != expected) {
        throw InputError("generator kind mismatch");
    }
    if (spec.length == 0) {
        throw InputError("length must be positive");
    }
    if (expected != NoiseKind::White && !(spec.hurst > 0.0 && spec.hurst < 1.0)) {
        throw InputError("Hurst out of range");
    }
}

inline std::vector<double> fgn_values(const GeneratorSpec& spec)
{
    std::vector<double> acvf(spec.length + 1);
    for (std::size_t k = 0; k <= spec.length; ++k) {
        acvf[k] = fgn_autocovariance(spec.hurst, k);
    }
    return synthesize_gaussian(acvf, spec.length, spec.seed);
}

} // namespace detail

inline TimeSeries gen_fgn(const GeneratorSpec& spec)
{
    detail::validate(spec, NoiseKind::FractionalGaussian);
    return TimeSeries(detail::fgn_values(spec), "fgn");
}

/// Cumulative sum of the fGn draw with the same (H, N, seed); B(0) = 0 is implicit,
/// so element 0 is the first increment.
inline TimeSeries gen_fbm(const GeneratorSpec& spec)
{
    detail::validate(spec, NoiseKind::FractionalBrownian);
    auto values = detail::fgn_values(spec);
    double running = 0.0;
    for (double& v : values) {
        running += v;
        v = running;
    }
    return TimeSeries(std::move(values), "fbm");
}

inline TimeSeries gen_white(const GeneratorSpec& spec)
{
    detail::validate(spec, NoiseKind::White);
    NormalSource normal(spec.seed);
    std::vector<double> values(spec.length);
    for (double& v : values) {
        v = normal();
    }
    return TimeSeries(std::move(values), "white");
}

inline TimeSeries generate(const GeneratorSpec& spec)
{
    switch (spec.kind) {
    case NoiseKind::FractionalGaussian: return gen_fgn(spec);
    case NoiseKind::FractionalBrownian: return gen_fbm(spec);
    case NoiseKind::White: return gen_white(spec);
    }
    throw InputError("unknown generator kind");
}

} // namespace hurst
