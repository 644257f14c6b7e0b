#pragma once

// Command-line front end: `synth`, `analyze`, `validate`.
// Exit codes: 0 success, 1 input error, 2 internal failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "error.hpp"
#include "report.hpp"
#include "selfcheck.hpp"
#include "synth.hpp"
#include "trace_io.hpp"

namespace hurst {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

/// Maps samples affinely onto integer frame sizes in [1, 2^20].
inline std::vector<std::int64_t> to_frame_sizes(std::span<const double> x)
{
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    const double span = *hi - *lo;
    std::vector<std::int64_t> out(x.size(), 1);
    if (span > 0.0) {
        const double top = static_cast<double>(kMaxFrameSize - 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = 1 + std::llround((x[i] - *lo) / span * top);
        }
    }
    return out;
}

namespace detail {

inline void write_text(const std::string& path, const std::string& text, std::ostream& stdout_stream)
{
    if (path == "-") {
        stdout_stream << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InputError("cannot write " + path);
    }
    f << text;
    if (!f) {
        throw Error("write failed: " + path);
    }
}

} // namespace detail

inline int cli_main(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Hurst exponent, DFA and wavelet analysis of traffic traces", "hurst"};
    app.require_subcommand(1);

    std::string kind = "fgn";
    double hurst_value = 0.5;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::string out_path = "-";
    auto* synth = app.add_subcommand("synth", "generate a synthetic trace in sizes format");
    synth->add_option("--kind", kind, "fgn, fbm or white")->check(CLI::IsMember({"fgn", "fbm", "white"}));
    synth->add_option("--hurst", hurst_value, "target Hurst exponent in (0,1)");
    synth->add_option("--length", length, "number of samples")->required();
    synth->add_option("--seed", seed, "64-bit seed");
    synth->add_option("--out", out_path, "output file, - for stdout");

    std::string in_path;
    std::string format_name = "sizes";
    std::string plots_dir;
    std::string config_path;
    std::string label;
    bool as_json = false;
    bool as_csv = false;
    bool as_table = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "estimate H, D, beta, rho, alpha and H(t) for a trace");
    analyze_cmd->add_option("--in", in_path, "trace file, - for stdin")->required();
    analyze_cmd->add_option("--format", format_name, "sizes or timed")->check(CLI::IsMember({"sizes", "timed"}));
    auto* json_flag = analyze_cmd->add_flag("--json", as_json, "JSON report");
    auto* csv_flag = analyze_cmd->add_flag("--csv", as_csv, "CSV report");
    auto* table_flag = analyze_cmd->add_flag("--table", as_table, "text tables (default)");
    json_flag->excludes(csv_flag)->excludes(table_flag);
    csv_flag->excludes(table_flag);
    analyze_cmd->add_option("--plots", plots_dir, "directory for <label>_<method>.csv plot data");
    analyze_cmd->add_option("--config", config_path, "key = value overrides");
    analyze_cmd->add_option("--label", label, "trace label (default: file stem)");

    auto* validate = app.add_subcommand("validate", "run the generator/estimator self-check suite");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    try {
        if (synth->parsed()) {
            GeneratorSpec spec;
            spec.kind = kind == "fbm"   ? NoiseKind::FractionalBrownian
                        : kind == "white" ? NoiseKind::White
                                          : NoiseKind::FractionalGaussian;
            spec.hurst = hurst_value;
            spec.length = length;
            spec.seed = seed;
            const TimeSeries x = generate(spec);
            std::string text;
            text.reserve(x.size() * 8);
            for (std::int64_t v : to_frame_sizes(x.values())) {
                text += std::to_string(v);
                text += '\n';
            }
            detail::write_text(out_path, text, out);
            return kExitOk;
        }

        if (analyze_cmd->parsed()) {
            AnalysisConfig config;
            if (!config_path.empty()) {
                std::ifstream cf(config_path);
                if (!cf) {
                    throw InputError("cannot open " + config_path);
                }
                config = parse_config(cf);
            }
            if (label.empty()) {
                label = in_path == "-" ? "stdin" : std::filesystem::path(in_path).stem().string();
            }
            const Trace trace = load_trace(in_path, parse_trace_format(format_name), label);
            const Analysis a = analyze_full(trace.series, config);

            const ReportFormat fmt = as_json ? ReportFormat::Json : as_csv ? ReportFormat::Csv : ReportFormat::Table;
            out << emit_report(a.report, fmt);

            if (!plots_dir.empty()) {
                std::filesystem::create_directories(plots_dir);
                const auto file = [&](const char* method) {
                    return (std::filesystem::path(plots_dir) / (label + "_" + method + ".csv")).string();
                };
                if (a.psa) {
                    detail::write_text(file("psa"), emit_plot_data(a.psa->spectrum, a.psa->fit), out);
                }
                if (a.dfa) {
                    detail::write_text(file("dfa"), emit_plot_data(a.dfa->curve, a.dfa->global), out);
                }
                if (a.tsa) {
                    detail::write_text(file("tsa"), emit_plot_data(a.tsa->track), out);
                }
            }
            return kExitOk;
        }

        if (validate->parsed()) {
            bool all = true;
            for (const auto& c : run_self_checks()) {
                out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
                all = all && c.passed;
            }
            return all ? kExitOk : kExitInternal;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInput;
}

inline int cli_main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(std::move(args));
}

} // namespace hurst
