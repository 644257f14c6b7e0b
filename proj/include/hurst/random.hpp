#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hurst {

/// Seeded standard-normal source with a fully specified algorithm:
/// std::mt19937_64 (bit-exact per the standard), 53-bit uniforms on (0,1],
/// and the Box-Muller transform emitting cos/sin pairs in that order.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double uniform() noexcept
    {
        // (k + 1) / 2^53 lies in (0, 1], so log() below never sees zero.
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double operator()() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hurst
