#pragma once

// Quick generator/estimator self-check used by `hurst validate`.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "dfa.hpp"
#include "exponents.hpp"
#include "psa.hpp"
#include "series.hpp"
#include "synth.hpp"
#include "tsa.hpp"

namespace hurst {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline std::vector<CheckOutcome> run_self_checks()
{
    constexpr std::size_t n = 1 << 14;
    std::vector<CheckOutcome> out;
    const auto add = [&](std::string name, bool ok, std::string detail) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };
    const auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return std::string(buf);
    };

    {
        double worst = 0.0;
        for (int i = 1; i < 100; ++i) {
            const double h = i / 100.0;
            const ExponentSet e = complete(Hurst{h});
            worst = std::max({worst, std::abs(e.dimension.value - (2.0 - h)), std::abs(e.beta.value - (2.0 * h + 1.0)),
                              std::abs(e.rho.value - (std::pow(2.0, 2.0 * h - 1.0) - 1.0))});
        }
        add("exponent relations", worst < 1e-12, "max deviation " + std::to_string(worst));
    }
    {
        double acc = 0.0;
        constexpr int seeds = 20;
        for (int s = 0; s < seeds; ++s) {
            const auto x = gen_fgn({0.7, n, static_cast<std::uint64_t>(s), NoiseKind::FractionalGaussian});
            const auto c = autocovariance(x, 1);
            acc += c[1] / c[0];
        }
        const double r1 = acc / seeds;
        add("fGn(0.7) lag-1 correlation", std::abs(r1 - hurst_to_rho(0.7)) < 0.02, num(r1));
    }
    {
        const auto w = gen_white({0.5, n, 11, NoiseKind::White});
        const double alpha = dfa_analyze(w.values()).global.alpha;
        add("DFA white noise alpha", std::abs(alpha - 0.5) < 0.05, num(alpha));
    }
    {
        const auto x = gen_fgn({0.8, n, 12, NoiseKind::FractionalGaussian});
        const double alpha = dfa_analyze(x.values()).global.alpha;
        add("DFA fGn(0.8) alpha", std::abs(alpha - 0.8) < 0.08, num(alpha));
    }
    {
        std::vector<double> betas;
        double parseval = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto x = gen_fbm({0.7, n, static_cast<std::uint64_t>(100 + s), NoiseKind::FractionalBrownian});
            const auto r = psa_analyze(x.values());
            betas.push_back(r.fit.beta);
            const auto em = end_match(x.values());
            const double mu = mean(em);
            double energy = 0.0;
            for (double v : em) {
                energy += (v - mu) * (v - mu);
            }
            parseval = std::max(parseval, std::abs(spectral_energy(r.spectrum) - energy) / energy);
        }
        std::sort(betas.begin(), betas.end());
        add("PSA fBm(0.7) beta", std::abs(betas[2] - 2.4) < 0.25, num(betas[2]));
        add("Parseval identity", parseval < 1e-9, std::to_string(parseval));
    }
    {
        const auto x = gen_fbm({0.5, n, 21, NoiseKind::FractionalBrownian});
        const double h = tsa_report(x.values()).hurst;
        add("TSA fBm(0.5) global H", std::abs(h - 0.5) < 0.15, num(h));
    }
    {
        const auto w = gen_white({0.5, 1024, 5, NoiseKind::White});
        const WaveletSpec spec;
        const auto c = morlet_coefficients(w.values(), spec);
        double worst = 0.0;
        for (std::size_t j : {0, 10, 20}) {
            for (std::size_t t : {100, 500, 900}) {
                const auto ref = morlet_direct(w.values(), static_cast<double>(t), c.scales[j], spec.omega0);
                worst = std::max(worst, std::abs(c.at(j, t) - ref) / std::abs(ref));
            }
        }
        add("CWT direct-summation oracle", worst < 1e-6, std::to_string(worst));
    }
    return out;
}

} // namespace hurst
