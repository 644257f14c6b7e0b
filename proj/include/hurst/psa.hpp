#pragma once

// Power-spectral analysis: periodogram and log-log power-law fit for the
// spectral exponent beta, S(w) ~ w^-beta.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "error.hpp"
#include "exponents.hpp"
#include "fft.hpp"
#include "regression.hpp"
#include "series.hpp"

namespace hurst {

/// Closed frequency interval in cycles per sample.
struct FrequencyBand {
    double low = 0.0;
    double high = 0.5;

    friend bool operator==(const FrequencyBand&, const FrequencyBand&) = default;
};

/// Periodogram ordinates S_m at w_m = m / N, m = 1..floor(N/2) (DC excluded).
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> powers;
    std::size_t source_length = 0;
};

struct SpectralFit {
    double beta = 0.0;
    double std_error = 0.0;
    double intercept = 0.0; ///< of ln S = intercept - beta ln w
    FrequencyBand fit_band;
    double r_squared = 0.0;
    std::size_t bins_used = 0;
    std::size_t zero_bins_skipped = 0;
};

enum class SpectralDetrend {
    Mean,     ///< mean removal only
    EndMatch, ///< subtract the line through the first and last sample, then the mean
};

struct PsaOptions {
    SpectralDetrend detrend = SpectralDetrend::EndMatch;
    /// Lower band edge as a bin count (band starts at low_bins / N).
    double low_bins = 4.0;
    double high = 0.125;
};

inline FrequencyBand default_band(std::size_t n, const PsaOptions& opts = {})
{
    return {opts.low_bins / static_cast<double>(n), opts.high};
}

namespace detail {

inline std::vector<double> mean_centered(std::span<const double> x)
{
    const double mu = mean(x);
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) {
        v -= mu;
    }
    return out;
}

inline Spectrum periodogram_of_centered(std::span<const double> centered)
{
    const std::size_t n = centered.size();
    const auto coeffs = fft::forward_real(centered);
    Spectrum s;
    s.source_length = n;
    const std::size_t bins = n / 2;
    s.frequencies.resize(bins);
    s.powers.resize(bins);
    const double nd = static_cast<double>(n);
    for (std::size_t m = 1; m <= bins; ++m) {
        s.frequencies[m - 1] = static_cast<double>(m) / nd;
        s.powers[m - 1] = std::norm(coeffs[m]) / nd;
    }
    return s;
}

} // namespace detail

/// Plain periodogram of the mean-centered series: S_m = |X_m|^2 / N.
inline Spectrum periodogram(std::span<const double> x)
{
    if (x.size() < kMinEstimationLength) {
        throw InputError("series too short");
    }
    detail::require_finite(x);
    return detail::periodogram_of_centered(detail::mean_centered(x));
}

inline Spectrum periodogram(const TimeSeries& series) { return periodogram(series.values()); }

/// Bartlett average of plain periodograms over non-overlapping segments of
/// `segment_length` samples; frequencies are m / segment_length.
inline Spectrum averaged_periodogram(std::span<const double> x, std::size_t segment_length)
{
    if (segment_length < kMinEstimationLength) {
        throw InputError("series too short");
    }
    if (x.size() < segment_length) {
        throw InputError("segment longer than series");
    }
    const std::size_t count = x.size() / segment_length;
    Spectrum acc;
    for (std::size_t k = 0; k < count; ++k) {
        const auto seg = x.subspan(k * segment_length, segment_length);
        Spectrum s = periodogram(seg);
        if (acc.powers.empty()) {
            acc = std::move(s);
        } else {
            for (std::size_t m = 0; m < s.powers.size(); ++m) {
                acc.powers[m] += s.powers[m];
            }
        }
    }
    for (double& p : acc.powers) {
        p /= static_cast<double>(count);
    }
    return acc;
}

/// Total energy implied by the one-sided ordinates, i.e. sum over all N bins of
/// |X_m|^2 / N with the DC bin taken as zero. Equals sum (x - mean)^2 by Parseval.
inline double spectral_energy(const Spectrum& s)
{
    const std::size_t n = s.source_length;
    double total = 0.0;
    for (std::size_t i = 0; i < s.powers.size(); ++i) {
        const std::size_t m = i + 1;
        const bool nyquist = (n % 2 == 0) && (2 * m == n);
        total += nyquist ? s.powers[i] : 2.0 * s.powers[i];
    }
    return total;
}

/// Subtracts the straight line joining the first and last samples.
inline std::vector<double> end_match(std::span<const double> x)
{
    std::vector<double> out(x.begin(), x.end());
    const std::size_t n = out.size();
    if (n < 2) {
        return out;
    }
    const double first = x.front();
    const double step = (x.back() - x.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] -= first + step * static_cast<double>(i);
    }
    return out;
}

inline constexpr std::size_t kMinSpectralBins = 8;

/// OLS of ln S_m on ln w_m over the band; beta is the negated slope.
/// Zero-power bins inside the band are skipped and counted.
inline SpectralFit fit_beta(const Spectrum& spectrum, FrequencyBand band)
{
    std::vector<double> lx;
    std::vector<double> ly;
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
        const double w = spectrum.frequencies[i];
        if (w < band.low || w > band.high) {
            continue;
        }
        const double p = spectrum.powers[i];
        if (!(p > 0.0)) {
            ++zeros;
            continue;
        }
        lx.push_back(std::log(w));
        ly.push_back(std::log(p));
    }
    if (lx.size() < kMinSpectralBins) {
        throw InputError("insufficient spectral support");
    }
    const LineFit line = fit_line(lx, ly);
    SpectralFit fit;
    fit.beta = -line.slope;
    fit.std_error = line.slope_stderr;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    fit.bins_used = line.count;
    fit.zero_bins_skipped = zeros;
    fit.fit_band.low = std::max(band.low, spectrum.frequencies.front());
    fit.fit_band.high = std::min(band.high, spectrum.frequencies.back());
    return fit;
}

struct PsaResult {
    Spectrum spectrum;
    SpectralFit fit;
    ExponentSet exponents;
};

/// Full PSA pipeline on a motion-like series: detrend, periodogram, beta fit,
/// then H = (beta - 1) / 2 and the derived D and rho.
inline PsaResult psa_analyze(std::span<const double> x, const PsaOptions& opts = {})
{
    if (x.size() < kMinEstimationLength) {
        throw InputError("series too short");
    }
    detail::require_finite(x);
    PsaResult r;
    if (opts.detrend == SpectralDetrend::EndMatch) {
        r.spectrum = periodogram(end_match(x));
    } else {
        r.spectrum = periodogram(x);
    }
    r.fit = fit_beta(r.spectrum, default_band(x.size(), opts));
    r.exponents = complete(Beta{r.fit.beta}, r.fit.std_error);
    return r;
}

inline ExponentSet psa_estimate(std::span<const double> x, FrequencyBand band,
                                SpectralDetrend detrend = SpectralDetrend::EndMatch)
{
    if (x.size() < kMinEstimationLength) {
        throw InputError("series too short");
    }
    const Spectrum s = detrend == SpectralDetrend::EndMatch ? periodogram(end_match(x)) : periodogram(x);
    const SpectralFit fit = fit_beta(s, band);
    return complete(Beta{fit.beta}, fit.std_error);
}

inline ExponentSet psa_estimate(const TimeSeries& series, FrequencyBand band)
{
    return psa_estimate(series.values(), band);
}

inline ExponentSet psa_estimate(const TimeSeries& series)
{
    return psa_estimate(series.values(), default_band(series.size()));
}

} // namespace hurst
