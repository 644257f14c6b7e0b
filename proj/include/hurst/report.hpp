#pragma once

// Report emission (JSON, CSV, text table) and plot-data export.
//
// JSON schema (keys in this order):
//   label, length,
//   config { psa { detrend, band_low, band_high },
//            dfa { scales[], max_regimes },
//            tsa { omega0, min_scale, octaves, num_scales, smoothing },
//            integrate, seed|null },
//   psa { status, [message] | H{value,error}, D{..}, beta{..}, rho{..}, band_low, band_high, r_squared, bins },
//   dfa { status, [message] | alpha{value,error}, classification, fit_low, fit_high,
//         regimes[{scale_low, scale_high, alpha{..}, classification}], crossovers[], warnings[] },
//   tsa { status, [message] | H, H_min, H_max, D, energy, band_low, band_high, valid, undefined },
//   verdict { lrd, text }
// Reals carry 6 significant digits.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "dfa.hpp"
#include "error.hpp"
#include "psa.hpp"
#include "tsa.hpp"

namespace hurst {

enum class ReportFormat { Json, Csv, Table };

namespace detail {

inline std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline std::string sig6(double v) { return fmt("%.6g", v); }

inline double round_sig6(double v)
{
    if (!std::isfinite(v)) {
        return v;
    }
    return std::strtod(sig6(v).c_str(), nullptr);
}

inline ProcessType process_from_string(std::string_view s)
{
    for (auto t : {ProcessType::AntiCorrelated, ProcessType::WhiteNoise, ProcessType::LongRangeCorrelated,
                   ProcessType::OneOverF, ProcessType::Fbm}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw InputError("unknown classification '" + std::string(s) + "'");
}

using ojson = nlohmann::ordered_json;

inline ojson estimate_json(const Estimate& e)
{
    return ojson{{"value", round_sig6(e.value)}, {"error", round_sig6(e.std_error)}};
}

inline Estimate estimate_from(const ojson& j)
{
    return {j.at("value").get<double>(), j.at("error").get<double>()};
}

} // namespace detail

inline nlohmann::ordered_json to_json(const HurstReport& r)
{
    using detail::ojson;
    using detail::round_sig6;
    ojson j;
    j["label"] = r.label;
    j["length"] = r.length;

    ojson cfg;
    cfg["psa"] = ojson{{"detrend", r.config.psa_detrend},
                       {"band_low", round_sig6(r.config.psa_band_low)},
                       {"band_high", round_sig6(r.config.psa_band_high)}};
    cfg["dfa"] = ojson{{"scales", r.config.dfa_scales}, {"max_regimes", r.config.dfa_max_regimes}};
    cfg["tsa"] = ojson{{"omega0", round_sig6(r.config.tsa_omega0)},
                       {"min_scale", round_sig6(r.config.tsa_min_scale)},
                       {"octaves", round_sig6(r.config.tsa_octaves)},
                       {"num_scales", r.config.tsa_num_scales},
                       {"smoothing", round_sig6(r.config.tsa_smoothing)}};
    cfg["integrate"] = r.config.integrate;
    cfg["seed"] = r.config.seed ? ojson(*r.config.seed) : ojson(nullptr);
    j["config"] = std::move(cfg);

    ojson psa;
    if (r.psa.error) {
        psa = ojson{{"status", "error"}, {"message", *r.psa.error}};
    } else {
        psa["status"] = "ok";
        psa["H"] = detail::estimate_json(r.psa.exponents.hurst);
        psa["D"] = detail::estimate_json(r.psa.exponents.dimension);
        psa["beta"] = detail::estimate_json(r.psa.exponents.beta);
        psa["rho"] = detail::estimate_json(r.psa.exponents.rho);
        psa["band_low"] = round_sig6(r.psa.band.low);
        psa["band_high"] = round_sig6(r.psa.band.high);
        psa["r_squared"] = round_sig6(r.psa.r_squared);
        psa["bins"] = r.psa.bins;
    }
    j["psa"] = std::move(psa);

    ojson dfa;
    if (r.dfa.error) {
        dfa = ojson{{"status", "error"}, {"message", *r.dfa.error}};
    } else {
        dfa["status"] = "ok";
        dfa["alpha"] = detail::estimate_json(r.dfa.alpha);
        dfa["classification"] = to_string(r.dfa.process);
        dfa["fit_low"] = round_sig6(r.dfa.fit_low);
        dfa["fit_high"] = round_sig6(r.dfa.fit_high);
        ojson regimes = ojson::array();
        for (const auto& reg : r.dfa.regimes) {
            regimes.push_back(ojson{{"scale_low", round_sig6(reg.scale_low)},
                                    {"scale_high", round_sig6(reg.scale_high)},
                                    {"alpha", detail::estimate_json(reg.alpha)},
                                    {"classification", to_string(reg.process)}});
        }
        dfa["regimes"] = std::move(regimes);
        ojson cross = ojson::array();
        for (double c : r.dfa.crossovers) {
            cross.push_back(round_sig6(c));
        }
        dfa["crossovers"] = std::move(cross);
        dfa["warnings"] = r.dfa.warnings;
    }
    j["dfa"] = std::move(dfa);

    ojson tsa;
    if (r.tsa.error) {
        tsa = ojson{{"status", "error"}, {"message", *r.tsa.error}};
    } else {
        tsa["status"] = "ok";
        tsa["H"] = round_sig6(r.tsa.hurst);
        tsa["H_min"] = round_sig6(r.tsa.min_local);
        tsa["H_max"] = round_sig6(r.tsa.max_local);
        tsa["D"] = round_sig6(r.tsa.dimension);
        tsa["energy"] = round_sig6(r.tsa.energy);
        tsa["band_low"] = round_sig6(r.tsa.band_low);
        tsa["band_high"] = round_sig6(r.tsa.band_high);
        tsa["valid"] = r.tsa.valid;
        tsa["undefined"] = r.tsa.undefined;
    }
    j["tsa"] = std::move(tsa);

    j["verdict"] = ojson{{"lrd", r.lrd}, {"text", verdict_text(r.lrd)}};
    return j;
}

inline HurstReport report_from_json(const nlohmann::ordered_json& j)
{
    HurstReport r;
    try {
        r.label = j.at("label").get<std::string>();
        r.length = j.at("length").get<std::size_t>();

        const auto& cfg = j.at("config");
        r.config.psa_detrend = cfg.at("psa").at("detrend").get<std::string>();
        r.config.psa_band_low = cfg.at("psa").at("band_low").get<double>();
        r.config.psa_band_high = cfg.at("psa").at("band_high").get<double>();
        r.config.dfa_scales = cfg.at("dfa").at("scales").get<std::vector<std::size_t>>();
        r.config.dfa_max_regimes = cfg.at("dfa").at("max_regimes").get<std::size_t>();
        const auto& t = cfg.at("tsa");
        r.config.tsa_omega0 = t.at("omega0").get<double>();
        r.config.tsa_min_scale = t.at("min_scale").get<double>();
        r.config.tsa_octaves = t.at("octaves").get<double>();
        r.config.tsa_num_scales = t.at("num_scales").get<std::size_t>();
        r.config.tsa_smoothing = t.at("smoothing").get<double>();
        r.config.integrate = cfg.at("integrate").get<bool>();
        if (!cfg.at("seed").is_null()) {
            r.config.seed = cfg.at("seed").get<std::uint64_t>();
        }

        const auto& psa = j.at("psa");
        if (psa.at("status") == "error") {
            r.psa.error = psa.at("message").get<std::string>();
        } else {
            r.psa.exponents.hurst = detail::estimate_from(psa.at("H"));
            r.psa.exponents.dimension = detail::estimate_from(psa.at("D"));
            r.psa.exponents.beta = detail::estimate_from(psa.at("beta"));
            r.psa.exponents.rho = detail::estimate_from(psa.at("rho"));
            r.psa.band = {psa.at("band_low").get<double>(), psa.at("band_high").get<double>()};
            r.psa.r_squared = psa.at("r_squared").get<double>();
            r.psa.bins = psa.at("bins").get<std::size_t>();
        }

        const auto& dfa = j.at("dfa");
        if (dfa.at("status") == "error") {
            r.dfa.error = dfa.at("message").get<std::string>();
        } else {
            r.dfa.alpha = detail::estimate_from(dfa.at("alpha"));
            r.dfa.process = detail::process_from_string(dfa.at("classification").get<std::string>());
            r.dfa.fit_low = dfa.at("fit_low").get<double>();
            r.dfa.fit_high = dfa.at("fit_high").get<double>();
            for (const auto& reg : dfa.at("regimes")) {
                r.dfa.regimes.push_back({reg.at("scale_low").get<double>(), reg.at("scale_high").get<double>(),
                                         detail::estimate_from(reg.at("alpha")),
                                         detail::process_from_string(reg.at("classification").get<std::string>())});
            }
            r.dfa.crossovers = dfa.at("crossovers").get<std::vector<double>>();
            r.dfa.warnings = dfa.at("warnings").get<std::vector<std::string>>();
        }

        const auto& tsa = j.at("tsa");
        if (tsa.at("status") == "error") {
            r.tsa.error = tsa.at("message").get<std::string>();
        } else {
            r.tsa.hurst = tsa.at("H").get<double>();
            r.tsa.min_local = tsa.at("H_min").get<double>();
            r.tsa.max_local = tsa.at("H_max").get<double>();
            r.tsa.dimension = tsa.at("D").get<double>();
            r.tsa.energy = tsa.at("energy").get<double>();
            r.tsa.band_low = tsa.at("band_low").get<double>();
            r.tsa.band_high = tsa.at("band_high").get<double>();
            r.tsa.valid = tsa.at("valid").get<std::size_t>();
            r.tsa.undefined = tsa.at("undefined").get<std::size_t>();
        }
        r.lrd = j.at("verdict").at("lrd").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed report JSON: ") + e.what());
    }
    return r;
}

inline constexpr std::string_view kCsvHeader =
    "label,method,H,H_err,D,beta,rho,alpha1,alpha1_err,alpha2,alpha2_err,alpha3,alpha3_err,"
    "crossovers,H_min,H_max,beta_err,rho_err,classification,status,verdict";

namespace detail {

inline std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

inline std::string emit_csv(const HurstReport& r)
{
    std::string out(kCsvHeader);
    out += '\n';
    const std::string label = csv_field(r.label);
    const std::string verdict(verdict_text(r.lrd));

    const auto row = [&](std::string_view method, const std::vector<std::string>& cells,
                         const std::optional<std::string>& error) {
        out += label + ',' + std::string(method);
        for (const auto& c : cells) {
            out += ',' + c;
        }
        out += ',' + (error ? csv_field("error: " + *error) : std::string("ok"));
        out += ',' + verdict + '\n';
    };
    // Column order after method: H,H_err,D,beta,rho,a1,e1,a2,e2,a3,e3,crossovers,H_min,H_max,beta_err,rho_err,class
    std::vector<std::string> cells(17);
    if (!r.psa.error) {
        const auto& e = r.psa.exponents;
        cells = {sig6(e.hurst.value), sig6(e.hurst.std_error), sig6(e.dimension.value), sig6(e.beta.value),
                 sig6(e.rho.value), "", "", "", "", "", "", "", "", "", sig6(e.beta.std_error),
                 sig6(e.rho.std_error), std::string(to_string(classify_hurst(e.hurst.value)))};
    }
    row("psa", cells, r.psa.error);

    cells.assign(17, "");
    if (!r.dfa.error) {
        cells[0] = sig6(r.dfa.alpha.value);
        cells[1] = sig6(r.dfa.alpha.std_error);
        cells[2] = sig6(hurst_to_dimension(r.dfa.alpha.value));
        for (std::size_t k = 0; k < r.dfa.regimes.size() && k < 3; ++k) {
            cells[5 + 2 * k] = sig6(r.dfa.regimes[k].alpha.value);
            cells[6 + 2 * k] = sig6(r.dfa.regimes[k].alpha.std_error);
        }
        std::string cross;
        for (double c : r.dfa.crossovers) {
            cross += (cross.empty() ? "" : ";") + sig6(c);
        }
        cells[11] = cross;
        cells[16] = std::string(to_string(r.dfa.process));
    }
    row("dfa", cells, r.dfa.error);

    cells.assign(17, "");
    if (!r.tsa.error) {
        cells[0] = sig6(r.tsa.hurst);
        cells[2] = sig6(r.tsa.dimension);
        cells[12] = sig6(r.tsa.min_local);
        cells[13] = sig6(r.tsa.max_local);
        cells[16] = std::string(to_string(classify_hurst(r.tsa.hurst)));
    }
    row("tsa", cells, r.tsa.error);
    return out;
}

inline std::string pad(std::string s, std::size_t width)
{
    // Width counts code points so that "±" lines up.
    std::size_t visible = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) {
            ++visible;
        }
    }
    if (visible < width) {
        s.append(width - visible, ' ');
    }
    return s;
}

inline std::string pm(const Estimate& e) { return fmt("%.3f", e.value) + "±" + fmt("%.3f", e.std_error); }

inline std::string emit_table(const HurstReport& r)
{
    const std::size_t w = 16;
    std::string out;
    out += "Trace " + r.label + " (N = " + std::to_string(r.length) + ")\n\n";

    out += "PSA: H, D, beta and rho\n";
    out += pad("Time Series", w) + pad("H", w) + pad("D", w) + pad("beta", w) + "rho\n";
    if (r.psa.error) {
        out += pad(r.label, w) + "error: " + *r.psa.error + "\n";
    } else {
        const auto& e = r.psa.exponents;
        out += pad(r.label, w) + pad(pm(e.hurst), w) + pad(pm(e.dimension), w) + pad(pm(e.beta), w) + pm(e.rho) +
               "\n";
    }
    out += "\n";

    out += "DFA: alpha per scaling regime\n";
    out += pad("Time Series", w);
    for (int k = 0; k < 3; ++k) {
        out += pad("alpha", 8) + (k < 2 ? pad("±eps", 8) : std::string("±eps"));
    }
    out += "\n";
    if (r.dfa.error) {
        out += pad(r.label, w) + "error: " + *r.dfa.error + "\n";
    } else {
        std::string line = pad(r.label, w);
        for (std::size_t k = 0; k < 3; ++k) {
            if (k < r.dfa.regimes.size()) {
                line += pad(fmt("%.3f", r.dfa.regimes[k].alpha.value), 8) +
                        pad(fmt("%.3f", r.dfa.regimes[k].alpha.std_error), 8);
            } else {
                line += pad("-", 8) + pad("-", 8);
            }
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line + "\n";
        out += "global alpha " + pm(r.dfa.alpha) + " (" + std::string(to_string(r.dfa.process)) + ")";
        if (!r.dfa.crossovers.empty()) {
            out += ", crossovers at s =";
            for (double c : r.dfa.crossovers) {
                out += " " + fmt("%.1f", c);
            }
        }
        out += "\n";
    }
    out += "\n";

    out += "TSA: global and local Hurst exponent\n";
    out += pad("Time Series", w) + pad("H", w) + pad("Min{H(t)}", w) + pad("Max{H(t)}", w) + "D\n";
    if (r.tsa.error) {
        out += pad(r.label, w) + "error: " + *r.tsa.error + "\n";
    } else {
        out += pad(r.label, w) + pad(fmt("%.3f", r.tsa.hurst), w) + pad(fmt("%.3f", r.tsa.min_local), w) +
               pad(fmt("%.3f", r.tsa.max_local), w) + fmt("%.3f", r.tsa.dimension) + "\n";
    }
    out += "\n";
    out += "Verdict: " + std::string(verdict_text(r.lrd)) + "\n";
    return out;
}

} // namespace detail

inline std::string emit_report(const HurstReport& r, ReportFormat format)
{
    switch (format) {
    case ReportFormat::Json: return to_json(r).dump(2) + "\n";
    case ReportFormat::Csv: return detail::emit_csv(r);
    case ReportFormat::Table: return detail::emit_table(r);
    }
    throw Error("unknown report format");
}

// Plot data: log10 coordinates for curves and spectra, full precision.

inline std::string emit_plot_data(const FluctuationCurve& curve, const AlphaFit& fit)
{
    if (curve.points.empty()) {
        throw InputError("nothing to plot");
    }
    std::string out = "x,y,fit_y\n";
    const double intercept10 = fit.intercept / std::numbers::ln10;
    for (const auto& p : curve.points) {
        if (!(p.fluctuation > 0.0)) {
            continue;
        }
        const double x = std::log10(p.scale);
        out += detail::fmt("%.17g", x) + ',' + detail::fmt("%.17g", std::log10(p.fluctuation)) + ',' +
               detail::fmt("%.17g", fit.alpha * x + intercept10) + '\n';
    }
    return out;
}

inline std::string emit_plot_data(const Spectrum& spectrum, const SpectralFit& fit)
{
    if (spectrum.powers.empty()) {
        throw InputError("nothing to plot");
    }
    std::string out = "x,y,fit_y\n";
    const double intercept10 = fit.intercept / std::numbers::ln10;
    for (std::size_t i = 0; i < spectrum.powers.size(); ++i) {
        if (!(spectrum.powers[i] > 0.0)) {
            continue;
        }
        const double x = std::log10(spectrum.frequencies[i]);
        out += detail::fmt("%.17g", x) + ',' + detail::fmt("%.17g", std::log10(spectrum.powers[i])) + ',' +
               detail::fmt("%.17g", intercept10 - fit.beta * x) + '\n';
    }
    return out;
}

/// Only instants with a defined H(t) appear.
inline std::string emit_plot_data(const LocalHurstTrack& track)
{
    if (track.empty()) {
        throw InputError("nothing to plot");
    }
    std::string out = "t,H_t\n";
    for (std::size_t i = 0; i < track.values.size(); ++i) {
        out += std::to_string(track.times[i]) + ',' + detail::fmt("%.17g", track.values[i]) + '\n';
    }
    return out;
}

} // namespace hurst
