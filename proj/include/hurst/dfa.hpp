#pragma once

// Detrended fluctuation analysis with bidirectional segmentation: the
// profile is cut into floor(N/s) windows from the start and the same number
// from the end, so the remainder on either side is still covered.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "regression.hpp"
#include "series.hpp"

namespace hurst {

inline constexpr std::size_t kMinDfaScale = 4;

/// Windows of one scale. Indices are 0-based; each window is [begin, begin + scale).
struct SegmentGrid {
    std::size_t scale = 0;
    std::size_t per_direction = 0; ///< floor(N / scale)
    std::vector<std::size_t> begins; ///< forward windows first, then backward

    [[nodiscard]] std::size_t size() const noexcept { return begins.size(); }

    /// Pure enumeration, valid for any 1 <= scale <= n.
    static SegmentGrid build(std::size_t n, std::size_t scale)
    {
        if (scale == 0 || scale > n) {
            throw InputError("scale outside series");
        }
        SegmentGrid g;
        g.scale = scale;
        g.per_direction = n / scale;
        g.begins.reserve(2 * g.per_direction);
        for (std::size_t v = 0; v < g.per_direction; ++v) {
            g.begins.push_back(v * scale);
        }
        for (std::size_t v = 0; v < g.per_direction; ++v) {
            g.begins.push_back(n - (v + 1) * scale);
        }
        return g;
    }
};

inline void check_dfa_scale(std::size_t n, std::size_t scale)
{
    if (scale < kMinDfaScale) {
        throw InputError("scale below minimum");
    }
    if (scale > n / 4) {
        throw InputError("scale too large");
    }
}

inline SegmentGrid segment_profile(const Profile& profile, std::size_t scale)
{
    check_dfa_scale(profile.size(), scale);
    return SegmentGrid::build(profile.size(), scale);
}

/// Mean squared residual of `segment` about its least-squares line, abscissae 1..s.
inline double detrended_variance(std::span<const double> segment)
{
    const std::size_t s = segment.size();
    if (s < 2) {
        return 0.0;
    }
    const double xbar = (static_cast<double>(s) + 1.0) / 2.0;
    double ybar = 0.0;
    for (double y : segment) {
        ybar += y;
    }
    ybar /= static_cast<double>(s);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        const double dx = static_cast<double>(i + 1) - xbar;
        sxx += dx * dx;
        sxy += dx * (segment[i] - ybar);
    }
    const double slope = sxy / sxx;
    double acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        const double r = segment[i] - ybar - slope * (static_cast<double>(i + 1) - xbar);
        acc += r * r;
    }
    return acc / static_cast<double>(s);
}

/// F^2(s, v) for window `v` (0-based, forward windows first).
inline double segment_fluctuation(const Profile& profile, const SegmentGrid& grid, std::size_t v)
{
    if (v >= grid.size()) {
        throw InputError("segment index out of range");
    }
    return detrended_variance(std::span<const double>(profile.values).subspan(grid.begins[v], grid.scale));
}

struct FluctuationPoint {
    double scale = 0.0;
    double fluctuation = 0.0;
};

struct FluctuationCurve {
    std::vector<FluctuationPoint> points;
};

/// Roughly `count` log-spaced integer scales from min_scale to n/4, deduplicated.
inline std::vector<std::size_t> default_scales(std::size_t n, std::size_t count = 20,
                                               std::size_t min_scale = kMinDfaScale, std::size_t max_scale = 0)
{
    if (max_scale == 0) {
        max_scale = n / 4;
    }
    if (min_scale < kMinDfaScale || max_scale < min_scale || count < 2) {
        throw InputError("series too short");
    }
    std::vector<std::size_t> out;
    const double lo = std::log(static_cast<double>(min_scale));
    const double hi = std::log(static_cast<double>(max_scale));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        const auto s = static_cast<std::size_t>(std::llround(std::exp(t)));
        if (out.empty() || s > out.back()) {
            out.push_back(std::clamp(s, min_scale, max_scale));
        }
    }
    return out;
}

/// F(s) = sqrt of the mean of F^2(s, v) over all 2 floor(N/s) windows.
inline FluctuationCurve fluctuation_function(const Profile& profile, std::span<const std::size_t> scales)
{
    if (scales.empty()) {
        throw InputError("empty scale list");
    }
    FluctuationCurve curve;
    curve.points.reserve(scales.size());
    for (std::size_t k = 0; k < scales.size(); ++k) {
        if (k > 0 && scales[k] <= scales[k - 1]) {
            throw InputError("scales must be strictly increasing");
        }
        const SegmentGrid grid = segment_profile(profile, scales[k]);
        double acc = 0.0;
        for (std::size_t v = 0; v < grid.size(); ++v) {
            acc += segment_fluctuation(profile, grid, v);
        }
        curve.points.push_back({static_cast<double>(scales[k]), std::sqrt(acc / static_cast<double>(grid.size()))});
    }
    return curve;
}

struct ScaleRange {
    double low = 0.0;
    double high = std::numeric_limits<double>::infinity();
};

struct AlphaFit {
    double alpha = 0.0;
    double std_error = 0.0;
    double intercept = 0.0; ///< natural-log intercept: ln F = intercept + alpha ln s
    ScaleRange range;
    std::size_t points = 0;
};

inline constexpr std::size_t kMinAlphaPoints = 5;

/// OLS slope of ln F(s) against ln s over points inside `range` with F > 0.
inline AlphaFit fit_alpha(const FluctuationCurve& curve, ScaleRange range = {})
{
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto& p : curve.points) {
        if (p.scale >= range.low && p.scale <= range.high && p.fluctuation > 0.0) {
            lx.push_back(std::log(p.scale));
            ly.push_back(std::log(p.fluctuation));
        }
    }
    if (lx.size() < kMinAlphaPoints) {
        throw InputError("scale range too narrow");
    }
    const LineFit line = fit_line(lx, ly);
    return {line.slope, line.slope_stderr, line.intercept, {std::exp(lx.front()), std::exp(lx.back())}, line.count};
}

enum class ProcessType { AntiCorrelated, WhiteNoise, LongRangeCorrelated, OneOverF, Fbm };

inline constexpr double kAlphaBoundaryTolerance = 0.02;

inline constexpr ProcessType classify_alpha(double alpha) noexcept
{
    if (std::abs(alpha - 0.5) <= kAlphaBoundaryTolerance) {
        return ProcessType::WhiteNoise;
    }
    if (std::abs(alpha - 1.0) <= kAlphaBoundaryTolerance) {
        return ProcessType::OneOverF;
    }
    if (alpha < 0.5) {
        return ProcessType::AntiCorrelated;
    }
    if (alpha < 1.0) {
        return ProcessType::LongRangeCorrelated;
    }
    return ProcessType::Fbm;
}

inline constexpr std::string_view to_string(ProcessType t) noexcept
{
    switch (t) {
    case ProcessType::AntiCorrelated: return "power-law anti-correlation";
    case ProcessType::WhiteNoise: return "white noise";
    case ProcessType::LongRangeCorrelated: return "long-range power-law correlation";
    case ProcessType::OneOverF: return "1/f process";
    case ProcessType::Fbm: return "fBm process";
    }
    return "unknown";
}

struct ScalingRegime {
    ScaleRange range; ///< first and last grid scale of the regime
    double alpha = 0.0;
    double std_error = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
    ProcessType process = ProcessType::WhiteNoise;
};

struct DfaResult {
    std::vector<ScalingRegime> regimes;
    std::vector<double> crossovers;
    std::vector<std::string> warnings;
};

inline constexpr std::size_t kMinRegimePoints = 6;
inline constexpr std::size_t kMaxRegimes = 3;

namespace detail {

struct Segmented {
    std::vector<std::size_t> cuts; ///< start index of every regime after the first
    double rss = std::numeric_limits<double>::infinity();
};

inline double range_rss(std::span<const double> x, std::span<const double> y, std::size_t lo, std::size_t hi)
{
    return fit_line(x.subspan(lo, hi - lo), y.subspan(lo, hi - lo)).rss;
}

inline Segmented best_segmentation(std::span<const double> x, std::span<const double> y, std::size_t regimes)
{
    const std::size_t n = x.size();
    Segmented best;
    if (regimes == 1) {
        best.rss = range_rss(x, y, 0, n);
        return best;
    }
    if (regimes == 2) {
        for (std::size_t c = kMinRegimePoints; c + kMinRegimePoints <= n; ++c) {
            const double rss = range_rss(x, y, 0, c) + range_rss(x, y, c, n);
            if (rss < best.rss) {
                best = {{c}, rss};
            }
        }
        return best;
    }
    for (std::size_t c1 = kMinRegimePoints; c1 + 2 * kMinRegimePoints <= n; ++c1) {
        const double left = range_rss(x, y, 0, c1);
        for (std::size_t c2 = c1 + kMinRegimePoints; c2 + kMinRegimePoints <= n; ++c2) {
            const double rss = left + range_rss(x, y, c1, c2) + range_rss(x, y, c2, n);
            if (rss < best.rss) {
                best = {{c1, c2}, rss};
            }
        }
    }
    return best;
}

} // namespace detail

/// Piecewise log-log fit with 1..max_regimes regimes. The regime count
/// minimizes RSS_k + 2 * 3(k - 1) * RSS_1 / n (three parameters per extra
/// regime); ties go to fewer regimes. Crossovers are where adjacent regime
/// lines intersect, clamped to the gap between the two regimes' grid points.
inline DfaResult detect_crossovers(const FluctuationCurve& curve, std::size_t max_regimes = kMaxRegimes)
{
    DfaResult result;
    std::vector<double> lx;
    std::vector<double> ly;
    std::vector<double> scales;
    for (const auto& p : curve.points) {
        if (p.fluctuation > 0.0) {
            scales.push_back(p.scale);
            lx.push_back(std::log(p.scale));
            ly.push_back(std::log(p.fluctuation));
        }
    }
    if (lx.size() < kMinAlphaPoints) {
        throw InputError("scale range too narrow");
    }
    max_regimes = std::clamp<std::size_t>(max_regimes, 1, kMaxRegimes);
    const std::size_t supported = lx.size() / kMinRegimePoints;
    if (supported < max_regimes) {
        const std::size_t reduced = std::max<std::size_t>(supported, 1);
        result.warnings.push_back("only " + std::to_string(lx.size()) + " points; limited to " +
                                  std::to_string(reduced) + " regime(s)");
        max_regimes = reduced;
    }

    const double n = static_cast<double>(lx.size());
    // Residuals at rounding level count as an exact fit, so a clean power
    // law is never split on floating-point noise.
    double ly_mean = 0.0;
    for (double v : ly) {
        ly_mean += v;
    }
    ly_mean /= n;
    double tss = 0.0;
    for (double v : ly) {
        tss += (v - ly_mean) * (v - ly_mean);
    }
    const double rss_floor = 1e-20 * (tss + n);
    const auto clean = [&](double rss) { return rss < rss_floor ? 0.0 : rss; };

    const detail::Segmented single = detail::best_segmentation(lx, ly, 1);
    detail::Segmented chosen = single;
    const double single_rss = clean(single.rss);
    double best_score = single_rss;
    for (std::size_t k = 2; k <= max_regimes; ++k) {
        detail::Segmented seg = detail::best_segmentation(lx, ly, k);
        const double score = clean(seg.rss) + 2.0 * 3.0 * static_cast<double>(k - 1) * single_rss / n;
        if (score < best_score) {
            best_score = score;
            chosen = std::move(seg);
        }
    }

    std::vector<std::size_t> bounds{0};
    bounds.insert(bounds.end(), chosen.cuts.begin(), chosen.cuts.end());
    bounds.push_back(lx.size());
    std::vector<LineFit> lines;
    for (std::size_t r = 0; r + 1 < bounds.size(); ++r) {
        const std::size_t lo = bounds[r];
        const std::size_t len = bounds[r + 1] - lo;
        const LineFit line = fit_line(std::span<const double>(lx).subspan(lo, len),
                                      std::span<const double>(ly).subspan(lo, len));
        lines.push_back(line);
        result.regimes.push_back({{scales[lo], scales[lo + len - 1]},
                                  line.slope,
                                  line.slope_stderr,
                                  line.intercept,
                                  len,
                                  classify_alpha(line.slope)});
    }
    for (std::size_t r = 0; r + 1 < lines.size(); ++r) {
        const double left = scales[bounds[r + 1] - 1];
        const double right = scales[bounds[r + 1]];
        double cross = std::sqrt(left * right);
        const double dslope = lines[r].slope - lines[r + 1].slope;
        if (dslope != 0.0) {
            cross = std::exp((lines[r + 1].intercept - lines[r].intercept) / dslope);
        }
        result.crossovers.push_back(std::clamp(cross, left, right));
    }
    return result;
}

struct DfaOptions {
    std::size_t num_scales = 20;
    std::size_t min_scale = kMinDfaScale;
    std::size_t max_scale = 0; ///< 0 means N/4
    ScaleRange fit_range;      ///< default: whole grid
    std::size_t max_regimes = kMaxRegimes;
};

struct DfaAnalysis {
    std::vector<std::size_t> scales;
    FluctuationCurve curve;
    AlphaFit global;
    DfaResult regimes;
};

inline DfaAnalysis dfa_analyze(std::span<const double> x, const DfaOptions& opts = {})
{
    if (x.size() < kMinEstimationLength) {
        throw InputError("series too short");
    }
    DfaAnalysis out;
    const Profile p = profile(x);
    out.scales = default_scales(x.size(), opts.num_scales, opts.min_scale, opts.max_scale);
    out.curve = fluctuation_function(p, out.scales);
    out.global = fit_alpha(out.curve, opts.fit_range);
    out.regimes = detect_crossovers(out.curve, opts.max_regimes);
    return out;
}

} // namespace hurst
