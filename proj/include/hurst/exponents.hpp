#pragma once

#include <cmath>
#include <string_view>

namespace hurst {

/// A point estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;

    friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// H, D, beta and rho derived from a single source value.
struct ExponentSet {
    Estimate hurst;
    Estimate dimension;
    Estimate beta;
    Estimate rho;

    friend bool operator==(const ExponentSet&, const ExponentSet&) = default;
};

// Strong types so complete() cannot be called with an ambiguous bare double.
struct Hurst { double value; };
struct Beta { double value; };
struct Dimension { double value; };

inline constexpr double hurst_to_dimension(double h) noexcept { return 2.0 - h; }

inline double hurst_to_rho(double h) noexcept { return std::exp2(2.0 * h - 1.0) - 1.0; }

inline constexpr double hurst_to_beta(double h) noexcept { return 2.0 * h + 1.0; }

inline constexpr double beta_to_hurst(double beta) noexcept { return (beta - 1.0) / 2.0; }

inline constexpr double dimension_to_beta(double d) noexcept { return 5.0 - 2.0 * d; }

/// d rho / d H, used to carry a standard error through the rho relation.
inline double rho_slope(double h) noexcept { return 2.0 * std::log(2.0) * std::exp2(2.0 * h - 1.0); }

/// Completes the set from H; an H standard error propagates linearly.
inline ExponentSet complete(Hurst h, double hurst_error = 0.0)
{
    ExponentSet out;
    out.hurst = {h.value, hurst_error};
    out.dimension = {hurst_to_dimension(h.value), hurst_error};
    out.beta = {hurst_to_beta(h.value), 2.0 * hurst_error};
    out.rho = {hurst_to_rho(h.value), rho_slope(h.value) * hurst_error};
    return out;
}

inline ExponentSet complete(Beta b, double beta_error = 0.0)
{
    ExponentSet out = complete(Hurst{beta_to_hurst(b.value)}, beta_error / 2.0);
    // Keep the source value bit-exact rather than re-deriving it from H.
    out.beta = {b.value, beta_error};
    return out;
}

inline ExponentSet complete(Dimension d, double dimension_error = 0.0)
{
    ExponentSet out = complete(Hurst{2.0 - d.value}, dimension_error);
    out.dimension = {d.value, dimension_error};
    out.beta = {dimension_to_beta(d.value), 2.0 * dimension_error};
    return out;
}

enum class PersistenceClass { Persistent, RandomFbm, NonPersistent };

inline constexpr double kHurstBoundaryTolerance = 1e-9;

inline constexpr PersistenceClass classify_hurst(double h) noexcept
{
    if (h > 0.5 + kHurstBoundaryTolerance) {
        return PersistenceClass::Persistent;
    }
    if (h < 0.5 - kHurstBoundaryTolerance) {
        return PersistenceClass::NonPersistent;
    }
    return PersistenceClass::RandomFbm;
}

inline constexpr std::string_view to_string(PersistenceClass c) noexcept
{
    switch (c) {
    case PersistenceClass::Persistent: return "persistent";
    case PersistenceClass::RandomFbm: return "random (fBm)";
    case PersistenceClass::NonPersistent: return "non-persistent";
    }
    return "unknown";
}

} // namespace hurst
