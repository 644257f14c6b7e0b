#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <hurst/cli.hpp>

using namespace hurst;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli_main(std::move(args), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("hurst_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string slurp(const std::string& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_F(CliTest, SynthThenAnalyzeJson)
{
    const std::string trace = path("a.csv");
    ASSERT_EQ(run({"synth", "--kind", "fgn", "--hurst", "0.7", "--length", "65536", "--seed", "1", "--out", trace}).code,
              0);
    EXPECT_EQ(line_count(slurp(trace)), 65536u);
    const CliRun r = run({"analyze", "--in", trace, "--format", "sizes", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(j["label"], "a");
    EXPECT_EQ(j["dfa"]["status"], "ok");
    const double alpha = j["dfa"]["alpha"]["value"].get<double>();
    EXPECT_GE(alpha, 0.65);
    EXPECT_LE(alpha, 0.75);
    EXPECT_EQ(j["verdict"]["text"], "fractal with LRD");
}

TEST_F(CliTest, DeterministicOutput)
{
    const std::string trace = path("d.csv");
    ASSERT_EQ(run({"synth", "--hurst", "0.6", "--length", "4096", "--seed", "5", "--out", trace}).code, 0);
    const CliRun a = run({"analyze", "--in", trace, "--json"});
    const CliRun b = run({"analyze", "--in", trace, "--json"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const CliRun c = run({"analyze", "--in", trace, "--csv"});
    const CliRun d = run({"analyze", "--in", trace, "--csv"});
    EXPECT_EQ(c.out, d.out);
}

TEST_F(CliTest, SynthToStdoutMatchesFile)
{
    const std::string trace = path("s.csv");
    ASSERT_EQ(run({"synth", "--kind", "fbm", "--hurst", "0.4", "--length", "300", "--seed", "2", "--out", trace}).code,
              0);
    const CliRun r = run({"synth", "--kind", "fbm", "--hurst", "0.4", "--length", "300", "--seed", "2"});
    EXPECT_EQ(r.out, slurp(trace));
}

TEST_F(CliTest, MissingFileIsInputError)
{
    const CliRun r = run({"analyze", "--in", path("missing.csv"), "--format", "sizes"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagPrintsUsage)
{
    const CliRun r = run({"analyze", "--in", "x.csv", "--bogus"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("analyze"), std::string::npos);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"analyze", "--in", "x", "--json", "--csv"}).code, 1);
    EXPECT_EQ(run({"synth", "--kind", "pink", "--length", "10"}).code, 1);
}

TEST_F(CliTest, HelpExitsZero)
{
    const CliRun r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("synth"), std::string::npos);
}

TEST_F(CliTest, BadSynthParametersAreInputErrors)
{
    EXPECT_EQ(run({"synth", "--hurst", "1.2", "--length", "100"}).code, 1);
    EXPECT_EQ(run({"synth", "--length", "0"}).code, 1);
}

TEST_F(CliTest, ShortSeriesRejected)
{
    const std::string trace = path("short.csv");
    ASSERT_EQ(run({"synth", "--length", "100", "--out", trace}).code, 0);
    const CliRun r = run({"analyze", "--in", trace});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("series too short"), std::string::npos);
}

TEST_F(CliTest, PartialFailureKeepsOtherBlocks)
{
    const std::string trace = path("p.csv");
    const std::string cfg = path("p.cfg");
    ASSERT_EQ(run({"synth", "--hurst", "0.7", "--length", "4096", "--seed", "3", "--out", trace}).code, 0);
    {
        std::ofstream f(cfg);
        f << "# wavelet outside the admissible range\ntsa.omega0 = 3\n";
    }
    const CliRun r = run({"analyze", "--in", trace, "--json", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(j["psa"]["status"], "ok");
    EXPECT_EQ(j["dfa"]["status"], "ok");
    EXPECT_EQ(j["tsa"]["status"], "error");
    EXPECT_EQ(j["config"]["tsa"]["omega0"], 3.0);
}

TEST_F(CliTest, UnknownConfigKey)
{
    const std::string trace = path("k.csv");
    const std::string cfg = path("k.cfg");
    ASSERT_EQ(run({"synth", "--length", "512", "--out", trace}).code, 0);
    {
        std::ofstream f(cfg);
        f << "dfa.colour = blue\n";
    }
    EXPECT_EQ(run({"analyze", "--in", trace, "--config", cfg}).code, 1);
}

TEST_F(CliTest, PlotFiles)
{
    const std::string trace = path("net.csv");
    const std::string plots = path("plots");
    ASSERT_EQ(run({"synth", "--hurst", "0.7", "--length", "4096", "--seed", "8", "--out", trace}).code, 0);
    const CliRun r = run({"analyze", "--in", trace, "--table", "--plots", plots});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Verdict:"), std::string::npos);
    for (const char* m : {"psa", "dfa", "tsa"}) {
        const std::string p = (fs::path(plots) / (std::string("net_") + m + ".csv")).string();
        ASSERT_TRUE(fs::exists(p)) << p;
        EXPECT_GT(line_count(slurp(p)), 1u);
    }
    EXPECT_EQ(line_count(slurp((fs::path(plots) / "net_dfa.csv").string())), 21u);
}

TEST_F(CliTest, TimedFormat)
{
    const std::string trace = path("timed.csv");
    {
        std::ofstream f(trace);
        std::mt19937_64 rng(4);
        std::uniform_int_distribution<int> size(64, 1500);
        for (int i = 0; i < 1024; ++i) {
            f << 0.001 * i << ',' << size(rng) << '\n';
        }
    }
    const CliRun r = run({"analyze", "--in", trace, "--format", "timed", "--csv", "--label", "out"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("label,method", 0), 0u);
    EXPECT_NE(r.out.find("\nout,dfa,"), std::string::npos);
}

TEST_F(CliTest, ValidatePasses)
{
    const CliRun r = run({"validate"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}
