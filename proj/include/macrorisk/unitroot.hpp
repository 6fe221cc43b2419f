#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ols.hpp"
#include "series.hpp"

namespace macrorisk {

enum class AdfModel { None, ConstantOnly, ConstantAndTrend };

inline const char* to_string(AdfModel m) {
    switch (m) {
        case AdfModel::None: return "none";
        case AdfModel::ConstantOnly: return "constant";
        default: return "constant_trend";
    }
}

enum class Decision { Stationary, UnitRoot };

inline const char* to_string(Decision d) {
    return d == Decision::Stationary ? "stationary" : "unit_root";
}

struct TermStats {
    double coefficient = 0.0;
    double t_stat = 0.0;
    double p_value = 0.0;
};

// one dropped deterministic term during the trend -> constant -> none descent
struct DescentRecord {
    AdfModel model;
    std::string term;
    double p_value;
};

struct AdfOutcome {
    AdfModel model = AdfModel::None;
    std::size_t lags = 0;
    double rho_hat = 0.0;
    double adf_stat = 0.0;
    std::map<int, double> critical_values;  // level in {1, 5, 10} -> cv
    std::map<std::string, TermStats> terms;  // "C", "TREND" as fitted
    Decision decision = Decision::UnitRoot;
    std::size_t effective_n = 0;
    std::vector<DescentRecord> descent;
};

struct IntegrationReport {
    std::size_t order = 0;
    std::vector<AdfOutcome> trace;
    Series stationarized;
};

// MacKinnon (1991) response surface: cv = b_inf + b1/T + b2/T^2
inline double adf_critical_value(AdfModel model, std::size_t effective_n,
                                 int level) {
    static const std::map<int, std::array<double, 3>> none{
        {1, {-2.5658, -1.960, -10.04}},
        {5, {-1.9393, -0.398, 0.0}},
        {10, {-1.6156, -0.181, 0.0}}};
    static const std::map<int, std::array<double, 3>> constant{
        {1, {-3.4336, -5.999, -29.25}},
        {5, {-2.8621, -2.738, -8.36}},
        {10, {-2.5671, -1.438, -4.48}}};
    static const std::map<int, std::array<double, 3>> constant_trend{
        {1, {-3.9638, -8.353, -47.44}},
        {5, {-3.4126, -4.039, -17.83}},
        {10, {-3.1279, -1.576, -4.03}}};
    if (effective_n < 10)
        throw InsufficientObservations("adf_critical_value: effective_n < 10");
    const auto& table = model == AdfModel::None ? none
                        : model == AdfModel::ConstantOnly ? constant
                                                          : constant_trend;
    auto it = table.find(level);
    if (it == table.end())
        throw Error("adf_critical_value: level must be 1, 5, or 10");
    const double t = (double)effective_n;
    return it->second[0] + it->second[1] / t + it->second[2] / (t * t);
}

inline Decision classify(double adf_stat, double critical_value) {
    return adf_stat < critical_value ? Decision::Stationary
                                     : Decision::UnitRoot;
}

// nearest published table level to the requested alpha
inline int level_from_alpha(double alpha) {
    int best = 5;
    double gap = 1e300;
    for (int lv : {1, 5, 10}) {
        const double g = std::fabs(lv / 100.0 - alpha);
        if (g < gap) {
            gap = g;
            best = lv;
        }
    }
    return best;
}

namespace detail {

// Shared ADF design: dx_t on x_{t-1}, lagged differences, then C and TREND.
// Rows run t = lags .. n-2; the trend counts 0,1,2,... from the first row.
inline OlsFit adf_fit(const std::vector<double>& x, AdfModel model,
                      std::size_t lags) {
    const std::size_t m = x.size() - 1 - lags;
    std::vector<double> dx(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) dx[i] = x[i + 1] - x[i];
    std::vector<double> y(m), lev(m);
    for (std::size_t r = 0; r < m; ++r) {
        y[r] = dx[lags + r];
        lev[r] = x[lags + r];
    }
    DesignMatrix X;
    X.add("LEVEL", std::move(lev));
    for (std::size_t j = 1; j <= lags; ++j) {
        std::vector<double> col(m);
        for (std::size_t r = 0; r < m; ++r) col[r] = dx[lags + r - j];
        X.add("DLAG" + std::to_string(j), std::move(col));
    }
    if (model != AdfModel::None) X.add_intercept(m);
    if (model == AdfModel::ConstantAndTrend) {
        std::vector<double> tr(m);
        for (std::size_t r = 0; r < m; ++r) tr[r] = (double)r;
        X.add("TREND", std::move(tr));
    }
    return fit("D_LEVEL", y, X);
}

}  // namespace detail

// ADF regression; adf_stat is the t-ratio on the lagged level.
inline AdfOutcome adf_regression(const std::vector<double>& x, AdfModel model,
                                 std::size_t lags) {
    const std::size_t n = x.size();
    std::size_t k = 1 + lags;
    if (model != AdfModel::None) ++k;
    if (model == AdfModel::ConstantAndTrend) ++k;
    if (n < lags + 2 || n - 1 - lags < k + 2)
        throw SeriesTooShort("adf_regression: effective sample below " +
                             std::to_string(k + 2));
    const OlsFit f = detail::adf_fit(x, model, lags);
    double yy = 0.0;
    for (std::size_t t = lags; t + 1 < n; ++t) {
        const double d = x[t + 1] - x[t];
        yy += d * d;
    }
    if (f.ssr <= 1e-20 * std::max(1.0, yy))
        throw DegenerateFit("adf_regression: residual variance is zero");

    AdfOutcome out;
    out.model = model;
    out.lags = lags;
    out.rho_hat = f.coef("LEVEL");
    out.adf_stat = f.t_stat("LEVEL");
    out.effective_n = f.n_obs;
    for (const char* term : {"C", "TREND"})
        if (f.has(term))
            out.terms[term] = {f.coef(term), f.t_stat(term), f.p_value(term)};
    return out;
}

using AdfProvider =
    std::function<AdfOutcome(const std::vector<double>&, AdfModel, std::size_t)>;

struct LagSpec {
    bool automatic = false;
    std::size_t fixed = 0;

    static LagSpec fixed_lags(std::size_t k) { return {false, k}; }
    static LagSpec auto_lags() { return {true, 0}; }
};

// Schwarz-criterion lag choice: compare 0..cap on the common sample implied
// by the deepest candidate, ties to the smaller lag.
inline std::size_t choose_lags(const std::vector<double>& x, AdfModel model) {
    const std::size_t n = x.size();
    const std::size_t cap =
        (std::size_t)std::floor(std::cbrt(std::max((double)n - 1.0, 1.0)));
    std::size_t best = 0;
    double best_sic = 1e300;
    for (std::size_t L = 0; L <= cap; ++L) {
        // truncate the head so every candidate sees the same observations
        const std::vector<double> common(
            x.begin() + (std::ptrdiff_t)(cap - L), x.end());
        OlsFit f;
        try {
            if (common.size() < L + 2) throw SeriesTooShort("choose_lags");
            f = detail::adf_fit(common, model, L);
        } catch (const Error&) {
            break;
        }
        const double m = (double)f.n_obs;
        const double kpar = (double)(f.n_obs - f.dof);
        const double sic =
            std::log(std::max(f.ssr / m, 1e-300)) + kpar * std::log(m) / m;
        if (sic < best_sic - 1e-12) {
            best_sic = sic;
            best = L;
        }
    }
    return best;
}

// Sequential strategy: fit the trend model, drop the trend when its p-value
// exceeds alpha, likewise the constant; classify at the settled model's
// MacKinnon value; difference and repeat on a unit-root verdict.
inline IntegrationReport sequential_adf(const Series& s, double alpha,
                                        LagSpec lags, std::size_t max_diff,
                                        const AdfProvider& provider = adf_regression) {
    if (max_diff < 1) throw Error("sequential_adf: max_diff must be >= 1");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw Error("sequential_adf: alpha outside (0, 1)");
    const int level = level_from_alpha(alpha);
    std::vector<double> values = s.values;
    Period start = s.start;
    IntegrationReport report;
    report.order = 0;
    for (;;) {
        const std::size_t nlags =
            lags.automatic ? choose_lags(values, AdfModel::ConstantAndTrend)
                           : lags.fixed;
        std::vector<DescentRecord> descent;
        AdfOutcome out = provider(values, AdfModel::ConstantAndTrend, nlags);
        if (out.terms.at("TREND").p_value > alpha) {
            descent.push_back({AdfModel::ConstantAndTrend, "TREND",
                               out.terms.at("TREND").p_value});
            out = provider(values, AdfModel::ConstantOnly, nlags);
            if (out.terms.at("C").p_value > alpha) {
                descent.push_back(
                    {AdfModel::ConstantOnly, "C", out.terms.at("C").p_value});
                out = provider(values, AdfModel::None, nlags);
            }
        }
        for (int lv : {1, 5, 10})
            out.critical_values[lv] =
                adf_critical_value(out.model, out.effective_n, lv);
        out.decision = classify(out.adf_stat, out.critical_values.at(level));
        out.descent = std::move(descent);
        report.trace.push_back(out);
        if (out.decision == Decision::Stationary) {
            report.stationarized = Series(s.name, start, std::move(values));
            return report;
        }
        if (report.order >= max_diff)
            throw OrderExceeded("series " + s.name + " still has a unit root after " +
                                std::to_string(max_diff) + " difference(s)");
        std::vector<double> d(values.size() - 1);
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            d[i] = values[i + 1] - values[i];
        values = std::move(d);
        start = start.next();
        ++report.order;
    }
}

}  // namespace macrorisk
