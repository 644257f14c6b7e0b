#pragma once

// Time-scale analysis with an analytic Morlet wavelet. The scalogram of a
// process with local regularity H(t) behaves like a^(2H(t)+1) at small scales,
// so a per-instant log-log slope over the smallest scales gives H(t).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"
#include "exponents.hpp"
#include "fft.hpp"
#include "regression.hpp"
#include "series.hpp"

namespace hurst {

inline constexpr std::size_t kMinTsaLength = 256;
inline constexpr std::size_t kMinBandScales = 6;

struct WaveletSpec {
    double omega0 = 6.0;
    double min_scale = 8.0;
    double octaves = 6.0;
    std::size_t num_scales = 48;
    /// Half-width of the time-averaging window applied before the H(t)
    /// regression, in units of the scale. 0 disables smoothing.
    double smoothing = 8.0;

    [[nodiscard]] std::vector<double> scales() const
    {
        std::vector<double> out(num_scales);
        for (std::size_t j = 0; j < num_scales; ++j) {
            out[j] = min_scale * std::exp2(octaves * static_cast<double>(j) / static_cast<double>(num_scales - 1));
        }
        return out;
    }

    void validate() const
    {
        if (!(omega0 >= 5.0)) {
            throw InputError("wavelet centre frequency must be >= 5");
        }
        if (num_scales < 16 || !(octaves >= 3.0)) {
            throw InputError("scale grid needs >= 16 scales over >= 3 octaves");
        }
        if (!(min_scale > 0.0) || !(smoothing >= 0.0)) {
            throw InputError("invalid wavelet scale parameters");
        }
    }
};

/// Omega(t, a) = |W(t, a)|^2 on a scale x time grid (row-major by scale).
struct Scalogram {
    std::vector<double> scales;
    std::size_t length = 0;
    std::vector<double> values;
    double energy = 0.0;

    [[nodiscard]] double at(std::size_t scale_index, std::size_t t) const noexcept
    {
        return values[scale_index * length + t];
    }
    [[nodiscard]] double& at(std::size_t scale_index, std::size_t t) noexcept
    {
        return values[scale_index * length + t];
    }

    /// Samples closer than a*sqrt(2) to either end are inside the cone of influence.
    [[nodiscard]] std::size_t coi_margin(std::size_t scale_index) const noexcept
    {
        return static_cast<std::size_t>(std::ceil(scales[scale_index] * std::numbers::sqrt2));
    }

    [[nodiscard]] bool masked(std::size_t scale_index, std::size_t t) const noexcept
    {
        const std::size_t m = coi_margin(scale_index);
        return t < m || length - 1 - t < m;
    }
};

namespace detail {

/// DTFT of the time-reversed conjugate sampled wavelet a^-1/2 conj(phi(-u/a)),
/// exact through Poisson summation (alias terms beyond |k| = 2 are below 1e-300).
inline double morlet_kernel(double omega, double scale, double omega0) noexcept
{
    const double norm = std::pow(std::numbers::pi, -0.25) * std::sqrt(2.0 * std::numbers::pi * scale);
    double acc = 0.0;
    for (int k = -2; k <= 2; ++k) {
        const double u = scale * (omega + 2.0 * std::numbers::pi * k) - omega0;
        acc += std::exp(-0.5 * u * u);
    }
    return norm * acc;
}

/// Calls sink(j, row) with the complex coefficients W(., a_j) for every scale.
template <typename Sink>
void cwt_rows(std::span<const double> x, const WaveletSpec& spec, Sink&& sink)
{
    const std::size_t n = x.size();
    const std::vector<double> scales = spec.scales();
    // Padding keeps circular wrap-around of the Gaussian envelope below e^-32.
    const std::size_t m = fft::next_pow2(n + static_cast<std::size_t>(std::ceil(8.0 * scales.back())) + 1);

    std::vector<double> padded(m, 0.0);
    std::copy(x.begin(), x.end(), padded.begin());
    const auto half = fft::forward_real(padded);
    std::vector<std::complex<double>> spectrum(m);
    for (std::size_t j = 0; j < half.size(); ++j) {
        spectrum[j] = half[j];
    }
    for (std::size_t j = half.size(); j < m; ++j) {
        spectrum[j] = std::conj(half[m - j]);
    }

    fft::ComplexTransform inverse(m, fft::ComplexTransform::Direction::Backward);
    std::vector<std::complex<double>> product(m);
    std::vector<std::complex<double>> out(m);
    const double md = static_cast<double>(m);
    for (std::size_t s = 0; s < scales.size(); ++s) {
        for (std::size_t j = 0; j < m; ++j) {
            const double signed_j = j < m / 2 ? static_cast<double>(j) : static_cast<double>(j) - md;
            const double omega = 2.0 * std::numbers::pi * signed_j / md;
            product[j] = spectrum[j] * morlet_kernel(omega, scales[s], spec.omega0);
        }
        inverse.execute(product, out);
        for (std::size_t t = 0; t < n; ++t) {
            out[t] /= md;
        }
        sink(s, std::span<const std::complex<double>>(out).first(n));
    }
}

inline void require_tsa_input(std::span<const double> x, const WaveletSpec& spec)
{
    if (x.size() < kMinTsaLength) {
        throw InputError("series too short for time-scale analysis");
    }
    detail::require_finite(x);
    spec.validate();
}

} // namespace detail

/// Complex Morlet coefficients, row-major by scale.
struct CwtCoefficients {
    std::vector<double> scales;
    std::size_t length = 0;
    std::vector<std::complex<double>> values;

    [[nodiscard]] std::complex<double> at(std::size_t scale_index, std::size_t t) const noexcept
    {
        return values[scale_index * length + t];
    }
};

inline CwtCoefficients morlet_coefficients(std::span<const double> x, const WaveletSpec& spec = {})
{
    detail::require_tsa_input(x, spec);
    CwtCoefficients c;
    c.scales = spec.scales();
    c.length = x.size();
    c.values.resize(c.scales.size() * c.length);
    detail::cwt_rows(x, spec, [&](std::size_t s, std::span<const std::complex<double>> row) {
        std::copy(row.begin(), row.end(), c.values.begin() + static_cast<std::ptrdiff_t>(s * c.length));
    });
    return c;
}

/// Direct summation of W(t, a) = sum_s x(s) a^-1/2 conj(phi((s - t) / a)).
inline std::complex<double> morlet_direct(std::span<const double> x, double t, double scale, double omega0 = 6.0)
{
    const double norm = std::pow(std::numbers::pi, -0.25) / std::sqrt(scale);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t s = 0; s < x.size(); ++s) {
        const double u = (static_cast<double>(s) - t) / scale;
        const double env = std::exp(-0.5 * u * u);
        acc += x[s] * env * std::complex<double>(std::cos(omega0 * u), -std::sin(omega0 * u));
    }
    return norm * acc;
}

/// E_x = sum over the grid of Omega(t, a) a^2 dt da, with da the forward scale step.
inline double scalogram_energy(const Scalogram& s)
{
    double total = 0.0;
    for (std::size_t j = 0; j < s.scales.size(); ++j) {
        const double da = s.scales.size() < 2 ? 1.0
                          : j + 1 < s.scales.size() ? s.scales[j + 1] - s.scales[j]
                                                    : s.scales[j] - s.scales[j - 1];
        double row = 0.0;
        for (std::size_t t = 0; t < s.length; ++t) {
            row += s.at(j, t);
        }
        total += row * s.scales[j] * s.scales[j] * da;
    }
    return total;
}

inline Scalogram morlet_cwt(std::span<const double> x, const WaveletSpec& spec = {})
{
    detail::require_tsa_input(x, spec);
    Scalogram sc;
    sc.scales = spec.scales();
    sc.length = x.size();
    sc.values.resize(sc.scales.size() * sc.length);
    detail::cwt_rows(x, spec, [&](std::size_t s, std::span<const std::complex<double>> row) {
        for (std::size_t t = 0; t < row.size(); ++t) {
            sc.at(s, t) = std::norm(row[t]);
        }
    });
    sc.energy = scalogram_energy(sc);
    return sc;
}

inline Scalogram morlet_cwt(const TimeSeries& series, const WaveletSpec& spec = {})
{
    return morlet_cwt(series.values(), spec);
}

/// Replaces each unmasked entry by the mean of the unmasked entries of its
/// scale within +-round(factor * a) samples.
inline Scalogram smooth_in_time(const Scalogram& in, double factor)
{
    if (factor <= 0.0) {
        return in;
    }
    Scalogram out = in;
    std::vector<double> prefix(in.length + 1);
    for (std::size_t j = 0; j < in.scales.size(); ++j) {
        const std::size_t margin = in.coi_margin(j);
        if (2 * margin >= in.length) {
            continue;
        }
        const std::size_t lo = margin;
        const std::size_t hi = in.length - margin; // unmasked: [lo, hi)
        prefix[lo] = 0.0;
        for (std::size_t t = lo; t < hi; ++t) {
            prefix[t + 1] = prefix[t] + in.at(j, t);
        }
        const auto half = static_cast<std::size_t>(std::llround(factor * in.scales[j]));
        for (std::size_t t = lo; t < hi; ++t) {
            const std::size_t a = t >= lo + half ? t - half : lo;
            const std::size_t b = std::min(hi, t + half + 1);
            out.at(j, t) = (prefix[b] - prefix[a]) / static_cast<double>(b - a);
        }
    }
    out.energy = scalogram_energy(out);
    return out;
}

struct ScaleBand {
    double low = 0.0;
    double high = 0.0;
};

/// The smallest-scale third of the grid (at least kMinBandScales scales).
inline ScaleBand small_scale_band(std::span<const double> scales)
{
    if (scales.size() < kMinBandScales) {
        throw InputError("scale grid too small");
    }
    const std::size_t count = std::max(kMinBandScales, scales.size() / 3);
    return {scales.front(), scales[count - 1]};
}

/// H(t) = (slope of ln Omega(t, a) on ln a over the band - 1) / 2; empty when
/// fewer than kMinBandScales unmasked, positive entries remain.
inline std::optional<double> local_hurst(const Scalogram& sc, std::size_t t, ScaleBand band)
{
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t j = 0; j < sc.scales.size(); ++j) {
        const double a = sc.scales[j];
        if (a < band.low || a > band.high || sc.masked(j, t)) {
            continue;
        }
        const double v = sc.at(j, t);
        if (v > 0.0) {
            lx.push_back(std::log(a));
            ly.push_back(std::log(v));
        }
    }
    if (lx.size() < kMinBandScales) {
        return std::nullopt;
    }
    return (fit_line(lx, ly).slope - 1.0) / 2.0;
}

struct LocalHurstTrack {
    std::vector<std::size_t> times;
    std::vector<double> values;
    double global = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t undefined = 0;

    [[nodiscard]] bool empty() const noexcept { return values.empty(); }
};

/// Arithmetic mean of H(t) over the valid instants.
inline double global_hurst(std::span<const double> track)
{
    if (track.empty()) {
        throw InputError("no valid local estimates");
    }
    return detail::compensated_sum(track) / static_cast<double>(track.size());
}

inline double global_hurst(const LocalHurstTrack& track) { return global_hurst(track.values); }

inline LocalHurstTrack hurst_track(const Scalogram& sc, ScaleBand band)
{
    LocalHurstTrack track;
    for (std::size_t t = 0; t < sc.length; ++t) {
        if (const auto h = local_hurst(sc, t, band)) {
            track.times.push_back(t);
            track.values.push_back(*h);
        } else {
            ++track.undefined;
        }
    }
    track.global = global_hurst(track);
    const auto [lo, hi] = std::minmax_element(track.values.begin(), track.values.end());
    track.min = *lo;
    track.max = *hi;
    return track;
}

struct TsaReport {
    double hurst = 0.0;
    double min_local = 0.0;
    double max_local = 0.0;
    double dimension = 0.0;
    double energy = 0.0;
    ScaleBand band;
    LocalHurstTrack track;
};

/// Mean-centre, transform, smooth, regress over the small-scale band, average.
inline TsaReport tsa_report(std::span<const double> x, const WaveletSpec& spec = {})
{
    detail::require_tsa_input(x, spec);
    const double mu = mean(x);
    std::vector<double> centered(x.begin(), x.end());
    for (double& v : centered) {
        v -= mu;
    }
    const Scalogram raw = morlet_cwt(centered, spec);
    const Scalogram smoothed = smooth_in_time(raw, spec.smoothing);

    TsaReport r;
    r.band = small_scale_band(raw.scales);
    r.track = hurst_track(smoothed, r.band);
    r.hurst = r.track.global;
    r.min_local = r.track.min;
    r.max_local = r.track.max;
    r.dimension = hurst_to_dimension(r.hurst);
    r.energy = raw.energy;
    return r;
}

inline TsaReport tsa_report(const TimeSeries& series, const WaveletSpec& spec = {})
{
    return tsa_report(series.values(), spec);
}

} // namespace hurst
