#pragma once

// Runs the three estimators on one trace and assembles a HurstReport. Each
// method block fails independently; a failure is recorded in the block.

#include <cstdint>
#include <exception>
#include <future>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "dfa.hpp"
#include "error.hpp"
#include "exponents.hpp"
#include "psa.hpp"
#include "series.hpp"
#include "trace_io.hpp"
#include "tsa.hpp"

namespace hurst {

struct AnalysisConfig {
    PsaOptions psa;
    DfaOptions dfa;
    WaveletSpec tsa;
    /// PSA and TSA read the integrated (profile) series, whose H carries over
    /// from a noise-like input through the motion relations.
    bool integrate = true;
    std::optional<std::uint64_t> seed;
};

/// Parses `key = value` lines ('#' comments allowed) over `base`.
inline AnalysisConfig parse_config(std::istream& in, AnalysisConfig base = {})
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        std::string_view body = detail::trim(std::string_view(line).substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("malformed config line " + std::to_string(lineno));
        }
        const std::string key(detail::trim(body.substr(0, eq)));
        const std::string_view value = detail::trim(body.substr(eq + 1));
        const auto bad = [&] { throw InputError("bad value for '" + key + "' at config line " + std::to_string(lineno)); };
        const auto real = [&](double& dst) {
            if (!detail::parse_full(value, dst)) {
                bad();
            }
        };
        const auto count = [&](std::size_t& dst) {
            if (!detail::parse_full(value, dst)) {
                bad();
            }
        };
        if (key == "psa.low_bins") {
            real(base.psa.low_bins);
        } else if (key == "psa.high") {
            real(base.psa.high);
        } else if (key == "psa.detrend") {
            if (value == "mean") {
                base.psa.detrend = SpectralDetrend::Mean;
            } else if (value == "end-match") {
                base.psa.detrend = SpectralDetrend::EndMatch;
            } else {
                bad();
            }
        } else if (key == "dfa.num_scales") {
            count(base.dfa.num_scales);
        } else if (key == "dfa.min_scale") {
            count(base.dfa.min_scale);
        } else if (key == "dfa.max_scale") {
            count(base.dfa.max_scale);
        } else if (key == "dfa.fit_low") {
            real(base.dfa.fit_range.low);
        } else if (key == "dfa.fit_high") {
            real(base.dfa.fit_range.high);
        } else if (key == "dfa.max_regimes") {
            count(base.dfa.max_regimes);
        } else if (key == "tsa.omega0") {
            real(base.tsa.omega0);
        } else if (key == "tsa.min_scale") {
            real(base.tsa.min_scale);
        } else if (key == "tsa.octaves") {
            real(base.tsa.octaves);
        } else if (key == "tsa.num_scales") {
            count(base.tsa.num_scales);
        } else if (key == "tsa.smoothing") {
            real(base.tsa.smoothing);
        } else if (key == "integrate") {
            if (value == "true") {
                base.integrate = true;
            } else if (value == "false") {
                base.integrate = false;
            } else {
                bad();
            }
        } else {
            throw InputError("unknown config key '" + key + "' at line " + std::to_string(lineno));
        }
    }
    return base;
}

struct PsaBlock {
    std::optional<std::string> error;
    ExponentSet exponents;
    FrequencyBand band;
    double r_squared = 0.0;
    std::size_t bins = 0;

    friend bool operator==(const PsaBlock&, const PsaBlock&) = default;
};

struct RegimeRow {
    double scale_low = 0.0;
    double scale_high = 0.0;
    Estimate alpha;
    ProcessType process = ProcessType::WhiteNoise;

    friend bool operator==(const RegimeRow&, const RegimeRow&) = default;
};

struct DfaBlock {
    std::optional<std::string> error;
    Estimate alpha; ///< single-regime fit over the whole fit range
    ProcessType process = ProcessType::WhiteNoise;
    double fit_low = 0.0;
    double fit_high = 0.0;
    std::vector<RegimeRow> regimes;
    std::vector<double> crossovers;
    std::vector<std::string> warnings;

    friend bool operator==(const DfaBlock&, const DfaBlock&) = default;
};

struct TsaBlock {
    std::optional<std::string> error;
    double hurst = 0.0;
    double min_local = 0.0;
    double max_local = 0.0;
    double dimension = 0.0;
    double energy = 0.0;
    double band_low = 0.0;
    double band_high = 0.0;
    std::size_t valid = 0;
    std::size_t undefined = 0;

    friend bool operator==(const TsaBlock&, const TsaBlock&) = default;
};

/// Settings that produced a report, echoed into every output format.
struct ConfigEcho {
    std::string psa_detrend;
    double psa_band_low = 0.0;
    double psa_band_high = 0.0;
    std::vector<std::size_t> dfa_scales;
    std::size_t dfa_max_regimes = 0;
    double tsa_omega0 = 0.0;
    double tsa_min_scale = 0.0;
    double tsa_octaves = 0.0;
    std::size_t tsa_num_scales = 0;
    double tsa_smoothing = 0.0;
    bool integrate = true;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct HurstReport {
    std::string label;
    std::size_t length = 0;
    ConfigEcho config;
    PsaBlock psa;
    DfaBlock dfa;
    TsaBlock tsa;
    bool lrd = false;

    friend bool operator==(const HurstReport&, const HurstReport&) = default;
};

inline constexpr std::string_view verdict_text(bool lrd) noexcept
{
    return lrd ? "fractal with LRD" : "not LRD";
}

/// PSA H in (0.5, 1) and at least one DFA regime with alpha in (0.5, 1.5).
inline bool lrd_verdict(const PsaBlock& psa, const DfaBlock& dfa) noexcept
{
    if (psa.error || dfa.error) {
        return false;
    }
    const double h = psa.exponents.hurst.value;
    if (!(h > 0.5 && h < 1.0)) {
        return false;
    }
    for (const auto& r : dfa.regimes) {
        if (r.alpha.value > 0.5 && r.alpha.value < 1.5) {
            return true;
        }
    }
    return false;
}

/// Report plus the intermediate objects used for plot export.
struct Analysis {
    HurstReport report;
    std::optional<PsaResult> psa;
    std::optional<DfaAnalysis> dfa;
    std::optional<TsaReport> tsa;
};

namespace detail {

inline std::string describe(std::exception_ptr e)
{
    try {
        std::rethrow_exception(e);
    } catch (const std::exception& ex) {
        return ex.what();
    } catch (...) {
        return "unknown failure";
    }
}

} // namespace detail

inline Analysis analyze_full(const TimeSeries& series, const AnalysisConfig& config = {})
{
    if (series.size() < kMinTsaLength) {
        throw InputError("series too short");
    }
    const std::span<const double> raw = series.values();
    const std::vector<double> integrated = config.integrate ? profile(series).values : std::vector<double>{};
    const std::span<const double> motion = config.integrate ? std::span<const double>(integrated) : raw;

    auto psa_job = std::async(std::launch::async, [&] { return psa_analyze(motion, config.psa); });
    auto dfa_job = std::async(std::launch::async, [&] { return dfa_analyze(raw, config.dfa); });
    auto tsa_job = std::async(std::launch::async, [&] { return tsa_report(motion, config.tsa); });

    Analysis out;
    HurstReport& r = out.report;
    r.label = series.label();
    r.length = series.size();

    r.config.psa_detrend = config.psa.detrend == SpectralDetrend::EndMatch ? "end-match" : "mean";
    const FrequencyBand band = default_band(series.size(), config.psa);
    r.config.psa_band_low = band.low;
    r.config.psa_band_high = band.high;
    try {
        r.config.dfa_scales = default_scales(series.size(), config.dfa.num_scales, config.dfa.min_scale,
                                             config.dfa.max_scale);
    } catch (const Error&) {
        // Reported through the DFA block.
    }
    r.config.dfa_max_regimes = config.dfa.max_regimes;
    r.config.tsa_omega0 = config.tsa.omega0;
    r.config.tsa_min_scale = config.tsa.min_scale;
    r.config.tsa_octaves = config.tsa.octaves;
    r.config.tsa_num_scales = config.tsa.num_scales;
    r.config.tsa_smoothing = config.tsa.smoothing;
    r.config.integrate = config.integrate;
    r.config.seed = config.seed;

    try {
        out.psa = psa_job.get();
        r.psa.exponents = out.psa->exponents;
        r.psa.band = out.psa->fit.fit_band;
        r.psa.r_squared = out.psa->fit.r_squared;
        r.psa.bins = out.psa->fit.bins_used;
    } catch (...) {
        r.psa.error = detail::describe(std::current_exception());
    }

    try {
        out.dfa = dfa_job.get();
        const DfaAnalysis& d = *out.dfa;
        r.dfa.alpha = {d.global.alpha, d.global.std_error};
        r.dfa.process = classify_alpha(d.global.alpha);
        r.dfa.fit_low = d.global.range.low;
        r.dfa.fit_high = d.global.range.high;
        for (const auto& reg : d.regimes.regimes) {
            r.dfa.regimes.push_back({reg.range.low, reg.range.high, {reg.alpha, reg.std_error}, reg.process});
        }
        r.dfa.crossovers = d.regimes.crossovers;
        r.dfa.warnings = d.regimes.warnings;
    } catch (...) {
        r.dfa.error = detail::describe(std::current_exception());
    }

    try {
        out.tsa = tsa_job.get();
        const TsaReport& t = *out.tsa;
        r.tsa.hurst = t.hurst;
        r.tsa.min_local = t.min_local;
        r.tsa.max_local = t.max_local;
        r.tsa.dimension = t.dimension;
        r.tsa.energy = t.energy;
        r.tsa.band_low = t.band.low;
        r.tsa.band_high = t.band.high;
        r.tsa.valid = t.track.values.size();
        r.tsa.undefined = t.track.undefined;
    } catch (...) {
        r.tsa.error = detail::describe(std::current_exception());
    }

    r.lrd = lrd_verdict(r.psa, r.dfa);
    return out;
}

inline HurstReport analyze(const TimeSeries& series, const AnalysisConfig& config = {})
{
    return analyze_full(series, config).report;
}

} // namespace hurst
