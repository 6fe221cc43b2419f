#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "pipeline.hpp"

namespace macrorisk {

// Minimal document tree for deterministic rendering: objects keep sorted
// keys (std::map), numbers print through %.9g, integers stay integral.
struct JValue;
using JObject = std::map<std::string, JValue>;
using JArray = std::vector<JValue>;

struct JValue {
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string,
                 JArray, JObject>
        v = nullptr;

    JValue() = default;
    JValue(bool b) : v(b) {}
    JValue(int i) : v((std::int64_t)i) {}
    JValue(std::size_t i) : v((std::int64_t)i) {}
    JValue(std::int64_t i) : v(i) {}
    JValue(double d) : v(d) {}
    JValue(const char* s) : v(std::string(s)) {}
    JValue(std::string s) : v(std::move(s)) {}
    JValue(JArray a) : v(std::move(a)) {}
    JValue(JObject o) : v(std::move(o)) {}
};

namespace detail {

inline void escape_json(const std::string& s, std::string& out) {
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if ((unsigned char)c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
}

inline void write_json(const JValue& val, std::string& out) {
    if (std::holds_alternative<std::nullptr_t>(val.v)) {
        out += "null";
    } else if (auto* b = std::get_if<bool>(&val.v)) {
        out += *b ? "true" : "false";
    } else if (auto* i = std::get_if<std::int64_t>(&val.v)) {
        out += std::to_string(*i);
    } else if (auto* d = std::get_if<double>(&val.v)) {
        out += format_g9(*d);
    } else if (auto* s = std::get_if<std::string>(&val.v)) {
        out += '"';
        escape_json(*s, out);
        out += '"';
    } else if (auto* a = std::get_if<JArray>(&val.v)) {
        out += '[';
        for (std::size_t k = 0; k < a->size(); ++k) {
            if (k) out += ',';
            write_json((*a)[k], out);
        }
        out += ']';
    } else {
        const auto& obj = std::get<JObject>(val.v);
        out += '{';
        bool first = true;
        for (const auto& [key, item] : obj) {
            if (!first) out += ',';
            first = false;
            out += '"';
            escape_json(key, out);
            out += "\":";
            write_json(item, out);
        }
        out += '}';
    }
}

inline JValue fit_to_json(const OlsFit& f) {
    JObject coefficients, std_errors, t_stats, p_values;
    JArray names, residuals;
    for (std::size_t i = 0; i < f.names.size(); ++i) {
        names.push_back(f.names[i]);
        coefficients[f.names[i]] = f.beta[i];
        std_errors[f.names[i]] = f.std_errors[i];
        t_stats[f.names[i]] = f.t_stats[i];
        p_values[f.names[i]] = f.p_values[i];
    }
    for (double e : f.residuals) residuals.push_back(e);
    JObject out;
    out["adj_r_squared"] = f.adj_r_squared;
    out["coefficients"] = std::move(coefficients);
    out["dependent"] = f.dependent;
    out["dof"] = f.dof;
    out["durbin_watson"] = f.dw;
    out["n_obs"] = f.n_obs;
    out["names"] = std::move(names);
    out["p_values"] = std::move(p_values);
    out["r_squared"] = f.r_squared;
    out["residuals"] = std::move(residuals);
    out["std_errors"] = std::move(std_errors);
    out["t_stats"] = std::move(t_stats);
    return std::move(out);
}

inline JValue outcome_to_json(const AdfOutcome& o) {
    JObject cvs;
    for (const auto& [lv, cv] : o.critical_values)
        cvs[std::to_string(lv) + "%"] = cv;
    JObject terms;
    for (const auto& [nm, t] : o.terms) {
        JObject rec;
        rec["coefficient"] = t.coefficient;
        rec["p_value"] = t.p_value;
        rec["t_stat"] = t.t_stat;
        terms[nm] = std::move(rec);
    }
    JArray descent;
    for (const auto& d : o.descent) {
        JObject rec;
        rec["model"] = to_string(d.model);
        rec["p_value"] = d.p_value;
        rec["term"] = d.term;
        descent.push_back(std::move(rec));
    }
    JObject out;
    out["adf_stat"] = o.adf_stat;
    out["critical_values"] = std::move(cvs);
    out["decision"] = to_string(o.decision);
    out["descent"] = std::move(descent);
    out["effective_n"] = o.effective_n;
    out["lags"] = o.lags;
    out["model"] = to_string(o.model);
    out["rho_hat"] = o.rho_hat;
    out["terms"] = std::move(terms);
    return std::move(out);
}

}  // namespace detail

inline JValue report_to_json(const PipelineReport& report) {
    JObject integration;
    for (const auto& [nm, rep] : report.integration) {
        JArray trace;
        for (const auto& o : rep.trace)
            trace.push_back(detail::outcome_to_json(o));
        JObject entry;
        entry["order"] = rep.order;
        entry["trace"] = std::move(trace);
        integration[nm] = std::move(entry);
    }

    JArray steps;
    for (const auto& st : report.ladder.steps) {
        JObject entry;
        JArray ranking;
        for (const auto& nm : st.abs_t_ranking) ranking.push_back(nm);
        entry["abs_t_ranking"] = std::move(ranking);
        entry["fit"] = detail::fit_to_json(st.fit);
        if (st.removed) {
            entry["removed"] = *st.removed;
            entry["removal_p_value"] = *st.removal_p_value;
        }
        if (st.entered) {
            entry["entered"] = *st.entered;
            entry["entry_p_value"] = *st.entry_p_value;
        }
        steps.push_back(std::move(entry));
    }
    JObject ladder;
    ladder["alpha"] = report.ladder.alpha;
    ladder["direction"] = to_string(report.ladder.direction);
    ladder["steps"] = std::move(steps);

    JObject dw;
    {
        JObject band;
        band["high"] = report.diagnostics.durbin_watson.band.high;
        band["low"] = report.diagnostics.durbin_watson.band.low;
        dw["band"] = std::move(band);
        dw["statistic"] = report.diagnostics.durbin_watson.statistic;
        dw["verdict"] = to_string(report.diagnostics.durbin_watson.verdict);
    }
    JObject jb;
    {
        const auto& j = report.diagnostics.jarque_bera;
        jb["jb_stat"] = j.jb_stat;
        jb["kurtosis"] = j.kurtosis;
        jb["p_value"] = j.p_value;
        jb["skewness"] = j.skewness;
        jb["verdict"] = j.verdict();
    }
    JObject white;
    {
        const auto& w = report.diagnostics.white;
        JArray aux, dropped;
        for (const auto& nm : w.aux_regressors) aux.push_back(nm);
        for (const auto& nm : w.dropped_collinear) dropped.push_back(nm);
        white["aux_regressors"] = std::move(aux);
        white["df"] = w.df;
        white["dropped_collinear"] = std::move(dropped);
        white["f_p_value"] = w.f_p_value;
        white["f_statistic"] = w.f_statistic;
        white["obs_r_squared"] = w.obs_r_squared;
        white["p_value"] = w.p_value;
        white["verdict"] = w.verdict();
    }
    JObject diagnostics;
    diagnostics["durbin_watson"] = std::move(dw);
    diagnostics["jarque_bera"] = std::move(jb);
    diagnostics["white"] = std::move(white);

    JObject final_equation;
    for (const auto& [nm, coef] : report.final_equation)
        final_equation[nm] = coef;
    JObject sign_check;
    for (const auto& [nm, st] : report.sign_check)
        sign_check[nm] = to_string(st);

    JObject root;
    root["diagnostics"] = std::move(diagnostics);
    root["final_equation"] = std::move(final_equation);
    root["integration"] = std::move(integration);
    root["ladder"] = std::move(ladder);
    root["r_squared"] = report.r_squared;
    root["sign_check"] = std::move(sign_check);
    return std::move(root);
}

// machine-readable rendering: sorted keys, %.9g numbers, newline-terminated
inline std::string render_structured(const PipelineReport& report) {
    std::string out;
    detail::write_json(report_to_json(report), out);
    out += '\n';
    return out;
}

namespace detail {

inline AdfModel model_from_string(const std::string& s) {
    if (s == "none") return AdfModel::None;
    if (s == "constant") return AdfModel::ConstantOnly;
    if (s == "constant_trend") return AdfModel::ConstantAndTrend;
    throw Error("unknown adf model '" + s + "'");
}

inline OlsFit fit_from_json(const nlohmann::json& j) {
    OlsFit f;
    f.dependent = j.at("dependent").get<std::string>();
    for (const auto& nm : j.at("names"))
        f.names.push_back(nm.get<std::string>());
    for (const auto& nm : f.names) {
        f.beta.push_back(j.at("coefficients").at(nm).get<double>());
        f.std_errors.push_back(j.at("std_errors").at(nm).get<double>());
        f.t_stats.push_back(j.at("t_stats").at(nm).get<double>());
        f.p_values.push_back(j.at("p_values").at(nm).get<double>());
    }
    for (const auto& e : j.at("residuals"))
        f.residuals.push_back(e.get<double>());
    f.r_squared = j.at("r_squared").get<double>();
    f.adj_r_squared = j.at("adj_r_squared").get<double>();
    f.dw = j.at("durbin_watson").get<double>();
    f.dof = j.at("dof").get<std::size_t>();
    f.n_obs = j.at("n_obs").get<std::size_t>();
    // ssr is not part of the document; rebuild it from the residuals
    for (double e : f.residuals) f.ssr += e * e;
    return f;
}

}  // namespace detail

// Inverse of render_structured. Numbers survive exactly (the %.9g rendering
// is read back as the same double), so render(parse(x)) == x byte-for-byte.
inline PipelineReport parse_structured(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PipelineReport report;

    for (const auto& [nm, entry] : j.at("integration").items()) {
        IntegrationReport rep;
        rep.order = entry.at("order").get<std::size_t>();
        for (const auto& stage : entry.at("trace")) {
            AdfOutcome o;
            o.adf_stat = stage.at("adf_stat").get<double>();
            o.rho_hat = stage.at("rho_hat").get<double>();
            o.effective_n = stage.at("effective_n").get<std::size_t>();
            o.lags = stage.at("lags").get<std::size_t>();
            o.model = detail::model_from_string(stage.at("model"));
            o.decision = stage.at("decision").get<std::string>() == "stationary"
                             ? Decision::Stationary
                             : Decision::UnitRoot;
            for (const auto& [lv, cv] : stage.at("critical_values").items())
                o.critical_values[std::stoi(lv)] = cv.get<double>();
            for (const auto& [term, rec] : stage.at("terms").items())
                o.terms[term] = {rec.at("coefficient").get<double>(),
                                 rec.at("t_stat").get<double>(),
                                 rec.at("p_value").get<double>()};
            for (const auto& d : stage.at("descent"))
                o.descent.push_back(
                    {detail::model_from_string(d.at("model")),
                     d.at("term").get<std::string>(),
                     d.at("p_value").get<double>()});
            rep.trace.push_back(std::move(o));
        }
        report.integration.emplace(nm, std::move(rep));
    }

    const auto& ladder = j.at("ladder");
    report.ladder.alpha = ladder.at("alpha").get<double>();
    report.ladder.direction =
        ladder.at("direction").get<std::string>() == "backward"
            ? Direction::Backward
            : Direction::Forward;
    for (const auto& st : ladder.at("steps")) {
        SpecStep step;
        step.fit = detail::fit_from_json(st.at("fit"));
        for (const auto& nm : st.at("abs_t_ranking"))
            step.abs_t_ranking.push_back(nm.get<std::string>());
        if (st.contains("removed")) {
            step.removed = st.at("removed").get<std::string>();
            step.removal_p_value = st.at("removal_p_value").get<double>();
        }
        if (st.contains("entered")) {
            step.entered = st.at("entered").get<std::string>();
            step.entry_p_value = st.at("entry_p_value").get<double>();
        }
        report.ladder.steps.push_back(std::move(step));
    }

    const auto& diag = j.at("diagnostics");
    {
        const auto& dw = diag.at("durbin_watson");
        report.diagnostics.durbin_watson.statistic =
            dw.at("statistic").get<double>();
        report.diagnostics.durbin_watson.band.low =
            dw.at("band").at("low").get<double>();
        report.diagnostics.durbin_watson.band.high =
            dw.at("band").at("high").get<double>();
        const std::string v = dw.at("verdict").get<std::string>();
        report.diagnostics.durbin_watson.verdict =
            v == "positive_autocorrelation" ? DwVerdict::PositiveAutocorr
            : v == "negative_autocorrelation" ? DwVerdict::NegativeAutocorr
                                              : DwVerdict::NoAutocorr;
    }
    {
        const auto& jb = diag.at("jarque_bera");
        report.diagnostics.jarque_bera.jb_stat = jb.at("jb_stat").get<double>();
        report.diagnostics.jarque_bera.kurtosis =
            jb.at("kurtosis").get<double>();
        report.diagnostics.jarque_bera.skewness =
            jb.at("skewness").get<double>();
        report.diagnostics.jarque_bera.p_value = jb.at("p_value").get<double>();
        report.diagnostics.jarque_bera.normal =
            jb.at("verdict").get<std::string>() == "normal";
    }
    {
        const auto& w = diag.at("white");
        report.diagnostics.white.df = w.at("df").get<std::size_t>();
        report.diagnostics.white.obs_r_squared =
            w.at("obs_r_squared").get<double>();
        report.diagnostics.white.p_value = w.at("p_value").get<double>();
        report.diagnostics.white.f_statistic =
            w.at("f_statistic").get<double>();
        report.diagnostics.white.f_p_value = w.at("f_p_value").get<double>();
        for (const auto& nm : w.at("aux_regressors"))
            report.diagnostics.white.aux_regressors.push_back(
                nm.get<std::string>());
        for (const auto& nm : w.at("dropped_collinear"))
            report.diagnostics.white.dropped_collinear.push_back(
                nm.get<std::string>());
        report.diagnostics.white.homoscedastic =
            w.at("verdict").get<std::string>() == "homoscedastic";
    }

    for (const auto& [nm, coef] : j.at("final_equation").items())
        report.final_equation[nm] = coef.get<double>();
    report.r_squared = j.at("r_squared").get<double>();
    for (const auto& [nm, st] : j.at("sign_check").items()) {
        const std::string v = st.get<std::string>();
        report.sign_check[nm] = v == "conform" ? SignStatus::Conform
                                : v == "non_conform" ? SignStatus::NonConform
                                                     : SignStatus::NotApplicable;
    }
    report.alpha = report.ladder.alpha;
    if (!report.ladder.steps.empty())
        report.dependent = report.ladder.final_fit().dependent;
    return report;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string num(double v) { return format_g9(v); }

}  // namespace detail

// fixed-layout human-readable rendering
inline std::string render_text(const PipelineReport& report) {
    std::string out;
    auto line = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };
    line("PIPELINE REPORT");
    line("===============");
    line("");
    line("1. Integration orders (sequential ADF, alpha " +
         detail::num(report.alpha) + ")");
    std::size_t max_order = 0;
    for (const auto& [nm, rep] : report.integration) {
        max_order = std::max(max_order, rep.order);
        line("  " + detail::pad(nm, 12) + " I(" + std::to_string(rep.order) +
             ")");
        for (std::size_t k = 0; k < rep.trace.size(); ++k) {
            const auto& o = rep.trace[k];
            std::string row = "    stage " + std::to_string(k) + ": model " +
                              detail::pad(to_string(o.model), 15) + " lags " +
                              std::to_string(o.lags) + "  stat " +
                              detail::num(o.adf_stat) + "  cv ";
            row += detail::num(o.critical_values.at(
                level_from_alpha(report.alpha)));
            row += "  -> ";
            row += to_string(o.decision);
            line(row);
            for (const auto& d : o.descent)
                line("      dropped " + d.term + " (model " +
                     std::string(to_string(d.model)) + ", p " +
                     detail::num(d.p_value) + ")");
        }
    }
    if (max_order > 0)
        line("  note: mixed integration orders; I(d>0) series enter the "
             "regression differenced d time(s)");
    line("");
    line("2. Specification ladder (" +
         std::string(to_string(report.ladder.direction)) + ", alpha " +
         detail::num(report.ladder.alpha) + ")");
    for (std::size_t k = 0; k < report.ladder.steps.size(); ++k) {
        const auto& st = report.ladder.steps[k];
        std::string head = "  step " + std::to_string(k + 1) + ":";
        if (st.removed)
            head += " removed " + *st.removed + " (p " +
                    detail::num(*st.removal_p_value) + ")";
        else if (st.entered)
            head += " entered " + *st.entered + " (p " +
                    detail::num(*st.entry_p_value) + ")";
        else
            head += " final";
        line(head);
        line("    " + detail::pad("name", 12) + detail::pad("coef", 16) +
             detail::pad("std_err", 16) + detail::pad("t_stat", 16) + "p");
        for (std::size_t i = 0; i < st.fit.names.size(); ++i)
            line("    " + detail::pad(st.fit.names[i], 12) +
                 detail::pad(detail::num(st.fit.beta[i]), 16) +
                 detail::pad(detail::num(st.fit.std_errors[i]), 16) +
                 detail::pad(detail::num(st.fit.t_stats[i]), 16) +
                 detail::num(st.fit.p_values[i]));
        line("    R2 " + detail::num(st.fit.r_squared) + "  adj " +
             detail::num(st.fit.adj_r_squared) + "  n " +
             std::to_string(st.fit.n_obs) + "  dof " +
             std::to_string(st.fit.dof));
    }
    line("");
    line("3. Diagnostics");
    const auto& dw = report.diagnostics.durbin_watson;
    line("  durbin-watson  " + detail::num(dw.statistic) + "  band [" +
         detail::num(dw.band.low) + ", " + detail::num(dw.band.high) +
         "]  -> " + to_string(dw.verdict));
    const auto& w = report.diagnostics.white;
    line("  white          obs_r2 " + detail::num(w.obs_r_squared) +
         "  chi2(" + std::to_string(w.df) + ") p " + detail::num(w.p_value) +
         "  F " + detail::num(w.f_statistic) + " (p " +
         detail::num(w.f_p_value) + ")  -> " + w.verdict());
    const auto& jb = report.diagnostics.jarque_bera;
    line("  jarque-bera    S " + detail::num(jb.skewness) + "  K " +
         detail::num(jb.kurtosis) + "  JB " + detail::num(jb.jb_stat) +
         "  p " + detail::num(jb.p_value) + "  -> " + jb.verdict());
    line("");
    line("4. Expected signs");
    for (const auto& [nm, st] : report.sign_check)
        line("  " + detail::pad(nm, 12) + to_string(st));
    line("");
    line("5. Final equation");
    std::string eq = "  " + report.dependent + " =";
    bool first = true;
    for (const auto& [nm, coef] : report.final_equation) {
        if (first) {
            eq += " " + detail::num(coef);
            first = false;
        } else {
            eq += (coef < 0 ? " - " : " + ") + detail::num(std::fabs(coef));
        }
        if (nm != kIntercept) eq += "*" + nm;
    }
    line(eq);
    line("  R2 = " + detail::num(report.r_squared));
    return out;
}

}  // namespace macrorisk
