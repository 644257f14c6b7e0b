#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace hurst {

/// Series shorter than this are accepted by TimeSeries but rejected by the estimators.
inline constexpr std::size_t kMinEstimationLength = 64;

namespace detail {

inline void require_finite(std::span<const double> values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InputError("non-finite sample at index " + std::to_string(i));
        }
    }
}

/// Neumaier compensated sum.
inline double compensated_sum(std::span<const double> values)
{
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

} // namespace detail

/// A finite real-valued sequence (frame sizes or synthetic samples) with a label.
class TimeSeries {
public:
    TimeSeries() = default;

    explicit TimeSeries(std::vector<double> values, std::string label = {})
        : values_(std::move(values)), label_(std::move(label))
    {
        if (values_.empty()) {
            throw InputError("empty input");
        }
        detail::require_finite(values_);
    }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    void set_label(std::string label) { label_ = std::move(label); }

private:
    std::vector<double> values_;
    std::string label_;
};

/// Cumulative sum of mean-centered samples; Y(N) vanishes up to rounding.
struct Profile {
    std::vector<double> values;
    double source_mean = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

inline double mean(std::span<const double> values)
{
    if (values.empty()) {
        throw InputError("empty input");
    }
    return detail::compensated_sum(values) / static_cast<double>(values.size());
}

inline double mean(const TimeSeries& series) { return mean(series.values()); }

inline Profile profile(std::span<const double> values)
{
    detail::require_finite(values);
    Profile out;
    out.source_mean = mean(values);
    out.values.resize(values.size());
    double running = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        running += values[i] - out.source_mean;
        out.values[i] = running;
    }
    return out;
}

inline Profile profile(const TimeSeries& series) { return profile(series.values()); }

/// Biased (1/N) sample autocovariance for lags 0..max_lag.
inline std::vector<double> autocovariance(std::span<const double> values, std::size_t max_lag)
{
    const std::size_t n = values.size();
    if (max_lag >= n) {
        throw InputError("lag exceeds series length");
    }
    const double mu = mean(values);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) {
        centered[i] = values[i] - mu;
    }
    std::vector<double> out(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            acc += centered[t] * centered[t + k];
        }
        out[k] = acc / static_cast<double>(n);
    }
    return out;
}

inline std::vector<double> autocovariance(const TimeSeries& series, std::size_t max_lag)
{
    return autocovariance(series.values(), max_lag);
}

} // namespace hurst
