#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <hurst/dfa.hpp>
#include <hurst/regression.hpp>
#include <hurst/series.hpp>
#include <hurst/synth.hpp>

using namespace hurst;

namespace {

GeneratorSpec fgn(double h, std::size_t n, std::uint64_t seed)
{
    return {h, n, seed, NoiseKind::FractionalGaussian};
}

double lag_correlation(const TimeSeries& x, std::size_t k)
{
    const auto c = autocovariance(x, k);
    return c[k] / c[0];
}

// Zero-mean unbiased lag products, averaged over seeds.
std::vector<double> ensemble_acvf(const std::vector<std::vector<double>>& draws, std::size_t max_lag)
{
    std::vector<double> out(max_lag + 1, 0.0);
    for (const auto& x : draws) {
        for (std::size_t k = 0; k <= max_lag; ++k) {
            double acc = 0.0;
            for (std::size_t t = 0; t + k < x.size(); ++t) {
                acc += x[t] * x[t + k];
            }
            out[k] += acc / static_cast<double>(x.size() - k);
        }
    }
    for (double& v : out) {
        v /= static_cast<double>(draws.size());
    }
    return out;
}

} // namespace

TEST(FgnAutocovariance, ClosedForm)
{
    EXPECT_DOUBLE_EQ(fgn_autocovariance(0.7, 0), 1.0);
    EXPECT_NEAR(fgn_autocovariance(0.7, 1), std::pow(2.0, 0.4) - 1.0, 1e-14);
    EXPECT_NEAR(fgn_autocovariance(0.5, 3), 0.0, 1e-15);
    EXPECT_NEAR(fgn_autocovariance(0.2, 1), std::pow(2.0, -0.6) - 1.0, 1e-14);
}

TEST(GenFgn, WhiteNoiseCase)
{
    const std::size_t n = 1 << 14;
    const auto x = gen_fgn(fgn(0.5, n, 4));
    EXPECT_LT(std::abs(lag_correlation(x, 1)), 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(GenFgn, LagOneCorrelationPersistentAndAntiPersistent)
{
    const std::size_t n = 1 << 16;
    EXPECT_NEAR(lag_correlation(gen_fgn(fgn(0.7, n, 1)), 1), 0.3195, 0.02);
    EXPECT_NEAR(lag_correlation(gen_fgn(fgn(0.2, n, 1)), 1), -0.3402, 0.02);
}

TEST(GenFgn, EnsembleAutocovarianceMatchesModel)
{
    const double h = 0.75;
    std::vector<std::vector<double>> draws;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto x = gen_fgn(fgn(h, 4096, s));
        draws.emplace_back(x.values().begin(), x.values().end());
    }
    const auto acvf = ensemble_acvf(draws, 20);
    for (std::size_t k = 0; k <= 20; ++k) {
        EXPECT_NEAR(acvf[k], fgn_autocovariance(h, k), 0.02) << "lag " << k;
    }
}

TEST(Synthesis, LevinsonRouteMatchesModel)
{
    const double h = 0.3;
    const std::size_t n = 256;
    std::vector<double> gamma(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        gamma[k] = fgn_autocovariance(h, k);
    }
    std::vector<std::vector<double>> draws;
    for (std::uint64_t s = 0; s < 400; ++s) {
        draws.push_back(synthesize_gaussian(gamma, n, s, SynthesisMethod::Levinson));
    }
    const auto acvf = ensemble_acvf(draws, 10);
    for (std::size_t k = 0; k <= 10; ++k) {
        EXPECT_NEAR(acvf[k], gamma[k], 0.03) << "lag " << k;
    }
}

TEST(Synthesis, RejectsNonPositiveDefiniteCovariance)
{
    std::vector<double> bad(9, 0.0);
    bad[0] = 1.0;
    bad[1] = 1.5;
    try {
        (void)synthesize_gaussian(bad, 8, 1, SynthesisMethod::Auto);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "synthesis failed, increase N");
    }
    EXPECT_THROW((void)synthesize_gaussian(bad, 8, 1, SynthesisMethod::CirculantEmbedding), Error);
}

TEST(GenFgn, HurstOutOfRange)
{
    for (double h : {0.0, 1.0, -0.1, 1.3}) {
        try {
            (void)gen_fgn(fgn(h, 128, 1));
            FAIL() << h;
        } catch (const InputError& e) {
            EXPECT_STREQ(e.what(), "Hurst out of range");
        }
    }
    EXPECT_THROW((void)gen_fbm({1.0, 128, 1, NoiseKind::FractionalBrownian}), InputError);
    EXPECT_THROW((void)gen_fgn({0.5, 128, 1, NoiseKind::White}), InputError);
}

TEST(GenFgn, Deterministic)
{
    const auto a = gen_fgn(fgn(0.6, 1000, 99));
    const auto b = gen_fgn(fgn(0.6, 1000, 99));
    const auto c = gen_fgn(fgn(0.6, 1000, 100));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i], b[i]);
    }
    EXPECT_NE(a[0], c[0]);
}

TEST(GenFbm, CumulativeSumOfFgn)
{
    const auto inc = gen_fgn(fgn(0.7, 512, 5));
    const auto fbm = gen_fbm({0.7, 512, 5, NoiseKind::FractionalBrownian});
    EXPECT_EQ(fbm[0], inc[0]);
    double running = 0.0;
    for (std::size_t i = 0; i < inc.size(); ++i) {
        running += inc[i];
        EXPECT_NEAR(fbm[i], running, 1e-12);
    }
}

TEST(GenFbm, BrownianVarianceLinearInTime)
{
    const std::size_t n = 1024;
    std::vector<double> var(n, 0.0);
    const int seeds = 400;
    for (int s = 0; s < seeds; ++s) {
        const auto b = gen_fbm({0.5, n, static_cast<std::uint64_t>(s), NoiseKind::FractionalBrownian});
        for (std::size_t t = 0; t < n; ++t) {
            var[t] += b[t] * b[t] / seeds;
        }
    }
    for (std::size_t t : {31, 127, 511}) {
        EXPECT_NEAR(var[t] / static_cast<double>(t + 1), 1.0, 0.2) << t;
    }
}

TEST(GenFbm, EnsembleVarianceScalesAsTwoH)
{
    const std::size_t n = 1024;
    std::vector<double> var(n, 0.0);
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        const auto b = gen_fbm({0.7, n, static_cast<std::uint64_t>(1000 + s), NoiseKind::FractionalBrownian});
        for (std::size_t t = 0; t < n; ++t) {
            var[t] += b[t] * b[t] / seeds;
        }
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t t = 16; t <= n / 4; ++t) {
        lx.push_back(std::log(static_cast<double>(t)));
        ly.push_back(std::log(var[t - 1]));
    }
    EXPECT_NEAR(fit_line(lx, ly).slope, 1.4, 0.1);
}

TEST(GenWhite, Moments)
{
    const std::size_t n = 1 << 16;
    const auto w = gen_white({0.5, n, 8, NoiseKind::White});
    const double m = mean(w);
    EXPECT_LT(std::abs(m), 3.0 / std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(autocovariance(w, 0)[0], 1.0, 0.05);

    const auto again = gen_white({0.5, n, 8, NoiseKind::White});
    for (std::size_t i = 0; i < n; i += 997) {
        EXPECT_EQ(w[i], again[i]);
    }
}

TEST(GenFbm, DifferencedMotionMatchesNoiseUnderDfa)
{
    const std::size_t n = 1 << 16;
    const auto noise = gen_fgn(fgn(0.8, n, 31));
    const auto motion = gen_fbm({0.8, n, 32, NoiseKind::FractionalBrownian});
    std::vector<double> diff(n);
    diff[0] = motion[0];
    for (std::size_t i = 1; i < n; ++i) {
        diff[i] = motion[i] - motion[i - 1];
    }
    const double a_noise = dfa_analyze(noise.values()).global.alpha;
    const double a_diff = dfa_analyze(diff).global.alpha;
    EXPECT_NEAR(a_noise, a_diff, 0.05);
}
