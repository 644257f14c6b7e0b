#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <hurst/analysis.hpp>
#include <hurst/report.hpp>
#include <hurst/synth.hpp>

using namespace hurst;

namespace {

// A hand-built report with round numbers, so the golden text stays readable.
HurstReport fixed_report()
{
    HurstReport r;
    r.label = "inbound";
    r.length = 65536;
    r.config.psa_detrend = "end-match";
    r.config.psa_band_low = 0.000383495;
    r.config.psa_band_high = 0.785398;
    r.config.dfa_scales = {4, 8, 16};
    r.config.dfa_max_regimes = 3;
    r.config.tsa_omega0 = 6;
    r.config.tsa_min_scale = 8;
    r.config.tsa_octaves = 6;
    r.config.tsa_num_scales = 48;
    r.config.tsa_smoothing = 8;
    r.config.seed = 7;
    r.psa.exponents = complete(Hurst{0.72}, 0.01);
    r.psa.band = {0.000383495, 0.785398};
    r.psa.r_squared = 0.93;
    r.psa.bins = 8188;
    r.dfa.alpha = {0.71, 0.004};
    r.dfa.process = ProcessType::LongRangeCorrelated;
    r.dfa.fit_low = 4;
    r.dfa.fit_high = 16384;
    r.dfa.regimes = {{4, 60, {0.65, 0.01}, ProcessType::LongRangeCorrelated},
                     {81, 16384, {1.0, 0.02}, ProcessType::OneOverF}};
    r.dfa.crossovers = {64.0};
    r.tsa.hurst = 0.31;
    r.tsa.min_local = -0.45;
    r.tsa.max_local = 1.42;
    r.tsa.dimension = 1.69;
    r.tsa.energy = 123.5;
    r.tsa.band_low = 8;
    r.tsa.band_high = 19.3;
    r.tsa.valid = 60000;
    r.tsa.undefined = 5536;
    r.lrd = true;
    return r;
}

const Analysis& fgn_analysis()
{
    static const Analysis a = [] {
        TimeSeries x = gen_fgn({0.7, 1 << 14, 11, NoiseKind::FractionalGaussian});
        x.set_label("fgn");
        return analyze_full(x);
    }();
    return a;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST(ReportJson, RoundTrip)
{
    const HurstReport& r = fgn_analysis().report;
    const auto j = to_json(r);
    const HurstReport back = report_from_json(nlohmann::ordered_json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(report_from_json(to_json(back)), back);
    EXPECT_EQ(back.label, "fgn");
    EXPECT_NEAR(back.psa.exponents.hurst.value, r.psa.exponents.hurst.value, 1e-5);
}

TEST(ReportJson, FixedKeyOrder)
{
    const auto j = to_json(fixed_report());
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"label", "length", "config", "psa", "dfa", "tsa", "verdict"}));
    EXPECT_EQ(j["verdict"]["text"], "fractal with LRD");
}

TEST(ReportJson, ErrorBlocksRoundTrip)
{
    HurstReport r = fixed_report();
    r.tsa = TsaBlock{};
    r.tsa.error = "series too short for time-scale analysis";
    const auto j = to_json(r);
    EXPECT_EQ(j["tsa"]["status"], "error");
    EXPECT_EQ(report_from_json(j).tsa.error, r.tsa.error);
}

TEST(ReportJson, MalformedInput)
{
    EXPECT_THROW((void)report_from_json(nlohmann::ordered_json::parse("{\"label\": 3}")), InputError);
}

TEST(ReportJson, SixSignificantDigits)
{
    EXPECT_EQ(detail::round_sig6(0.123456789), 0.123457);
    EXPECT_EQ(detail::round_sig6(12345678.0), 12345700.0);
}

TEST(ReportCsv, FixedHeaderAndRows)
{
    const std::string csv = emit_report(fixed_report(), ReportFormat::Csv);
    const auto rows = parse_csv(csv);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "label,method,H,H_err,D,beta,rho,alpha1,alpha1_err,alpha2,alpha2_err,alpha3,alpha3_err,"
              "crossovers,H_min,H_max,beta_err,rho_err,classification,status,verdict");
    const std::size_t columns = rows[0].size();
    for (std::size_t k = 1; k < rows.size(); ++k) {
        EXPECT_EQ(rows[k].size(), columns) << "row " << k;
    }
    EXPECT_EQ(rows[1][1], "psa");
    EXPECT_EQ(rows[2][1], "dfa");
    EXPECT_EQ(rows[3][1], "tsa");
    EXPECT_EQ(rows[2][7], "0.65");
    EXPECT_EQ(rows[2][13], "64");
    EXPECT_EQ(rows[3][14], "-0.45");
    EXPECT_EQ(emit_report(fgn_analysis().report, ReportFormat::Csv).substr(0, csv.find('\n')),
              csv.substr(0, csv.find('\n')));
}

TEST(ReportTable, MatchesGolden)
{
    const std::string expected = read_file(HURST_TEST_DATA_DIR "/report_table.golden");
    ASSERT_FALSE(expected.empty());
    EXPECT_EQ(emit_report(fixed_report(), ReportFormat::Table), expected);
}

TEST(ReportTable, ThreeBlocks)
{
    const std::string t = emit_report(fgn_analysis().report, ReportFormat::Table);
    EXPECT_NE(t.find("PSA:"), std::string::npos);
    EXPECT_NE(t.find("DFA:"), std::string::npos);
    EXPECT_NE(t.find("TSA:"), std::string::npos);
    EXPECT_LT(t.find("PSA:"), t.find("DFA:"));
    EXPECT_LT(t.find("DFA:"), t.find("TSA:"));
}

TEST(Report, InternalConsistency)
{
    const HurstReport& r = fgn_analysis().report;
    ASSERT_FALSE(r.psa.error);
    ASSERT_FALSE(r.tsa.error);
    const auto& e = r.psa.exponents;
    EXPECT_NEAR(e.dimension.value, 2.0 - e.hurst.value, 1e-9);
    EXPECT_NEAR(e.beta.value, 2.0 * e.hurst.value + 1.0, 1e-9);
    EXPECT_NEAR(e.rho.value, std::exp2(2.0 * e.hurst.value - 1.0) - 1.0, 1e-9);
    EXPECT_NEAR(r.tsa.dimension, 2.0 - r.tsa.hurst, 1e-9);
}

TEST(PlotData, CurveCardinalityAndFit)
{
    const Analysis& a = fgn_analysis();
    ASSERT_TRUE(a.dfa);
    const std::string csv = emit_plot_data(a.dfa->curve, a.dfa->global);
    const auto rows = parse_csv(csv);
    ASSERT_EQ(rows.size(), a.dfa->curve.points.size() + 1);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "y", "fit_y"}));
    const double intercept10 = a.dfa->global.intercept / std::log(10.0);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double x = std::stod(rows[k][0]);
        EXPECT_NEAR(std::stod(rows[k][2]), a.dfa->global.alpha * x + intercept10, 1e-9);
        EXPECT_NEAR(x, std::log10(a.dfa->curve.points[k - 1].scale), 1e-12);
    }
}

TEST(PlotData, TwentyPointCurve)
{
    FluctuationCurve c;
    for (int k = 0; k < 20; ++k) {
        const double s = 4.0 * std::pow(1.4, k);
        c.points.push_back({s, std::sqrt(s)});
    }
    const std::string csv = emit_plot_data(c, fit_alpha(c));
    EXPECT_EQ(parse_csv(csv).size(), 21u);
}

TEST(PlotData, SpectrumFit)
{
    const Analysis& a = fgn_analysis();
    ASSERT_TRUE(a.psa);
    const auto rows = parse_csv(emit_plot_data(a.psa->spectrum, a.psa->fit));
    ASSERT_EQ(rows.size(), a.psa->spectrum.powers.size() + 1);
    const double intercept10 = a.psa->fit.intercept / std::log(10.0);
    for (std::size_t k = 1; k < rows.size(); k += 97) {
        EXPECT_NEAR(std::stod(rows[k][2]), intercept10 - a.psa->fit.beta * std::stod(rows[k][0]), 1e-9);
    }
}

TEST(PlotData, TrackExcludesUndefinedInstants)
{
    const Analysis& a = fgn_analysis();
    ASSERT_TRUE(a.tsa);
    const auto rows = parse_csv(emit_plot_data(a.tsa->track));
    EXPECT_EQ(rows.size(), a.tsa->track.values.size() + 1);
    EXPECT_EQ(a.tsa->track.values.size() + a.tsa->track.undefined, a.report.length);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "H_t"}));
}
