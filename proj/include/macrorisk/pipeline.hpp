#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "diagnostics.hpp"
#include "series.hpp"
#include "stepwise.hpp"
#include "unitroot.hpp"

namespace macrorisk {

enum class Sign { Negative, Positive, Ambiguous };

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::Negative: return "negative";
        case Sign::Positive: return "positive";
        default: return "ambiguous";
    }
}

inline Sign sign_from_string(const std::string& s) {
    if (s == "negative") return Sign::Negative;
    if (s == "positive") return Sign::Positive;
    if (s == "ambiguous") return Sign::Ambiguous;
    throw ConfigError("unknown sign '" + s + "'");
}

struct ExpectedSign {
    std::string variable;
    Sign sign = Sign::Ambiguous;
};

enum class SignStatus { Conform, NonConform, NotApplicable };

inline const char* to_string(SignStatus s) {
    switch (s) {
        case SignStatus::Conform: return "conform";
        case SignStatus::NonConform: return "non_conform";
        default: return "not_applicable";
    }
}

struct PipelineConfig {
    std::string dependent;
    std::vector<std::string> regressors;
    double alpha = 0.05;
    LagSpec adf_lags = LagSpec::fixed_lags(0);
    std::size_t max_diff = 2;
    DwBand dw_band;
    std::vector<ExpectedSign> expected_signs;

    void validate() const {
        if (dependent.empty()) throw ConfigError("config: dependent missing");
        if (regressors.empty()) throw ConfigError("config: regressors missing");
        for (const auto& r : regressors)
            if (r == dependent)
                throw ConfigError("config: dependent '" + dependent +
                                  "' listed among regressors");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw ConfigError("config: alpha outside (0, 1)");
        if (max_diff < 1) throw ConfigError("config: max_diff must be >= 1");
        if (!(dw_band.low <= dw_band.high))
            throw ConfigError("config: dw band inverted");
        for (const auto& e : expected_signs)
            for (const auto& f : expected_signs)
                if (&e != &f && e.variable == f.variable)
                    throw ConfigError("config: duplicate sign for " +
                                      e.variable);
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!trim(cur).empty()) out.push_back(to_upper(trim(cur)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(to_upper(trim(cur)));
    return out;
}

inline double parse_decimal(const std::string& key, const std::string& v) {
    double out;
    if (!parse_cell(v, out))
        throw ConfigError("config: bad decimal for " + key + ": '" + v + "'");
    return out;
}

}  // namespace detail

// Flat key = value document; '#' starts a comment line. Keys mirror the
// PipelineConfig fields; expected signs use sign.NAME = negative|positive|ambiguous.
inline PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key == "dependent") {
            cfg.dependent = detail::to_upper(value);
        } else if (key == "regressors") {
            cfg.regressors = detail::split_list(value);
        } else if (key == "alpha") {
            cfg.alpha = detail::parse_decimal(key, value);
        } else if (key == "adf_lags") {
            if (value == "auto") {
                cfg.adf_lags = LagSpec::auto_lags();
            } else {
                const double v = detail::parse_decimal(key, value);
                if (v < 0 || v != (double)(std::size_t)v)
                    throw ConfigError("config: adf_lags must be 'auto' or a "
                                      "non-negative integer");
                cfg.adf_lags = LagSpec::fixed_lags((std::size_t)v);
            }
        } else if (key == "max_diff") {
            const double v = detail::parse_decimal(key, value);
            if (v < 1 || v != (double)(std::size_t)v)
                throw ConfigError("config: max_diff must be a positive integer");
            cfg.max_diff = (std::size_t)v;
        } else if (key == "dw_low") {
            cfg.dw_band.low = detail::parse_decimal(key, value);
        } else if (key == "dw_high") {
            cfg.dw_band.high = detail::parse_decimal(key, value);
        } else if (key.rfind("sign.", 0) == 0) {
            cfg.expected_signs.push_back(
                {detail::to_upper(detail::trim(key.substr(5))),
                 sign_from_string(value)});
        } else {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

inline std::map<std::string, SignStatus> check_expected_signs(
    const OlsFit& fit, const std::vector<ExpectedSign>& expectations) {
    std::map<std::string, SignStatus> out;
    for (const auto& e : expectations) {
        if (!fit.has(e.variable)) {
            out[e.variable] = SignStatus::NotApplicable;
            continue;
        }
        if (e.sign == Sign::Ambiguous) {
            out[e.variable] = SignStatus::Conform;
            continue;
        }
        const double c = fit.coef(e.variable);
        const bool ok = e.sign == Sign::Negative ? c < 0.0 : c > 0.0;
        out[e.variable] = ok ? SignStatus::Conform : SignStatus::NonConform;
    }
    return out;
}

struct PipelineDiagnostics {
    DwResult durbin_watson;
    WhiteResult white;
    JbResult jarque_bera;
};

struct PipelineReport {
    std::map<std::string, IntegrationReport> integration;
    SpecLadder ladder;
    PipelineDiagnostics diagnostics;
    std::map<std::string, SignStatus> sign_check;
    std::map<std::string, double> final_equation;
    double r_squared = 0.0;
    double alpha = 0.05;
    std::string dependent;
};

// The full workflow: sequential ADF on every variable (dependent included),
// difference I(d>0) series keeping their original names, align to the
// common span, backward-eliminate, run diagnostics, check expected signs.
inline PipelineReport run_pipeline(const Dataset& data,
                                   const PipelineConfig& config) {
    config.validate();
    if (!data.has_column(config.dependent))
        throw MissingColumn("pipeline: missing dependent column " +
                            config.dependent);
    for (const auto& r : config.regressors)
        if (!data.has_column(r))
            throw MissingColumn("pipeline: missing regressor column " + r);

    PipelineReport report;
    report.alpha = config.alpha;
    report.dependent = config.dependent;

    std::vector<std::string> all{config.dependent};
    all.insert(all.end(), config.regressors.begin(), config.regressors.end());
    std::size_t max_d = 0;
    for (const auto& nm : all) {
        IntegrationReport rep = sequential_adf(
            data.series(nm), config.alpha, config.adf_lags, config.max_diff);
        max_d = std::max(max_d, rep.order);
        report.integration.emplace(nm, std::move(rep));
    }

    const std::size_t usable = data.periods.size() - max_d;
    if (usable < 12)
        throw InsufficientObservations(
            "pipeline: only " + std::to_string(usable) +
            " usable observations after stationarization");

    // trim every stationarized series to the common (latest) span
    std::map<std::string, std::vector<double>> aligned;
    for (const auto& nm : all) {
        const auto& v = report.integration.at(nm).stationarized.values;
        aligned[nm] = std::vector<double>(v.end() - (std::ptrdiff_t)usable,
                                          v.end());
    }

    DesignMatrix X;
    X.add_intercept(usable);
    for (const auto& r : config.regressors) X.add(r, aligned.at(r));
    report.ladder = backward_eliminate(config.dependent,
                                       aligned.at(config.dependent), X,
                                       config.alpha);

    const OlsFit& final = report.ladder.final_fit();
    DesignMatrix final_design;
    for (const auto& nm : final.names) {
        if (nm == kIntercept)
            final_design.add_intercept(usable);
        else
            final_design.add(nm, aligned.at(nm));
    }
    report.diagnostics.durbin_watson =
        durbin_watson(final.residuals, config.dw_band);
    report.diagnostics.white = white_test(final, final_design, config.alpha);
    report.diagnostics.jarque_bera =
        jarque_bera(final.residuals, config.alpha);

    report.sign_check = check_expected_signs(final, config.expected_signs);
    for (std::size_t i = 0; i < final.names.size(); ++i)
        report.final_equation[final.names[i]] = final.beta[i];
    report.r_squared = final.r_squared;
    return report;
}

}  // namespace macrorisk
