#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "ols.hpp"

namespace macrorisk {

enum class DwVerdict { PositiveAutocorr, NoAutocorr, NegativeAutocorr };

inline const char* to_string(DwVerdict v) {
    switch (v) {
        case DwVerdict::PositiveAutocorr: return "positive_autocorrelation";
        case DwVerdict::NoAutocorr: return "no_autocorrelation";
        default: return "negative_autocorrelation";
    }
}

struct DwBand {
    double low = 1.0;
    double high = 3.0;
};

struct DwResult {
    double statistic = 0.0;
    DwVerdict verdict = DwVerdict::NoAutocorr;
    DwBand band;
};

inline DwResult durbin_watson(const std::vector<double>& residuals,
                              DwBand band = {}) {
    if (residuals.size() < 2)
        throw SeriesTooShort("durbin_watson: need at least 2 residuals");
    double den = 0.0, num = 0.0;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        den += residuals[i] * residuals[i];
        if (i > 0) {
            const double d = residuals[i] - residuals[i - 1];
            num += d * d;
        }
    }
    if (den == 0.0)
        throw DegenerateResiduals("durbin_watson: all residuals are zero");
    DwResult out;
    out.statistic = num / den;
    out.band = band;
    out.verdict = out.statistic < band.low    ? DwVerdict::PositiveAutocorr
                  : out.statistic > band.high ? DwVerdict::NegativeAutocorr
                                              : DwVerdict::NoAutocorr;
    return out;
}

struct WhiteResult {
    double obs_r_squared = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;
    double f_statistic = 0.0;
    double f_p_value = 1.0;
    std::vector<std::string> aux_regressors;
    std::vector<std::string> dropped_collinear;
    bool homoscedastic = true;

    const char* verdict() const {
        return homoscedastic ? "homoscedastic" : "heteroscedastic";
    }
};

// White heteroscedasticity test with cross terms: squared residuals on
// constant + each regressor + squares + pairwise products, collinear
// columns dropped left to right.
inline WhiteResult white_test(const OlsFit& fit_result,
                              const DesignMatrix& design, double alpha,
                              bool cross_terms = true) {
    const std::size_t n = fit_result.residuals.size();
    double den = 0.0;
    for (double e : fit_result.residuals) den += e * e;
    if (den == 0.0)
        throw DegenerateResiduals("white_test: all residuals are zero");

    std::vector<std::vector<double>> cols;
    std::vector<std::string> labels;
    cols.emplace_back(n, 1.0);
    labels.emplace_back(kIntercept);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < design.n_cols(); ++i)
        if (design.names[i] != kIntercept) idx.push_back(i);
    if (idx.empty())
        throw RankDeficient("white_test: no non-constant regressors");
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const auto& xa = design.columns[idx[a]];
        const auto& na = design.names[idx[a]];
        cols.push_back(xa);
        labels.push_back(na);
        std::vector<double> sq(n);
        for (std::size_t r = 0; r < n; ++r) sq[r] = xa[r] * xa[r];
        cols.push_back(std::move(sq));
        labels.push_back(na + "^2");
        if (!cross_terms) continue;
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const auto& xb = design.columns[idx[b]];
            std::vector<double> prod(n);
            for (std::size_t r = 0; r < n; ++r) prod[r] = xa[r] * xb[r];
            cols.push_back(std::move(prod));
            labels.push_back(na + "*" + design.names[idx[b]]);
        }
    }

    const auto kept = collinear_drop(cols);
    WhiteResult out;
    DesignMatrix aux;
    for (auto i : kept) {
        aux.add(labels[i], cols[i]);
        out.aux_regressors.push_back(labels[i]);
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (std::find(kept.begin(), kept.end(), i) == kept.end())
            out.dropped_collinear.push_back(labels[i]);
    if (aux.n_cols() < 2)
        throw RankDeficient("white_test: auxiliary design collapsed");

    std::vector<double> u2(n);
    double u2_mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        u2[r] = fit_result.residuals[r] * fit_result.residuals[r];
        u2_mean += u2[r];
    }
    u2_mean /= (double)n;
    double u2_sst = 0.0;
    for (double v : u2) u2_sst += (v - u2_mean) * (v - u2_mean);
    const OlsFit auxfit = fit("RESID^2", u2, aux);

    const std::size_t kcols = aux.n_cols();
    out.df = kcols - 1;
    // constant squared residuals leave nothing to explain
    const double r2 = u2_sst == 0.0 ? 0.0 : std::max(auxfit.r_squared, 0.0);
    out.obs_r_squared = (double)n * r2;
    out.p_value = dist::chi2_tail(out.obs_r_squared, (double)out.df);
    out.f_statistic =
        (r2 / (double)out.df) / ((1.0 - r2) / (double)(n - kcols));
    out.f_p_value =
        dist::f_tail(out.f_statistic, (double)out.df, (double)(n - kcols));
    out.homoscedastic = out.p_value > alpha;
    return out;
}

struct JbResult {
    double skewness = 0.0;
    double kurtosis = 0.0;
    double jb_stat = 0.0;
    double p_value = 1.0;
    bool normal = true;

    const char* verdict() const { return normal ? "normal" : "non_normal"; }
};

// Jarque-Bera on population central moments (divisor n)
inline JbResult jarque_bera(const std::vector<double>& residuals,
                            double alpha) {
    const std::size_t n = residuals.size();
    if (n < 4) throw SeriesTooShort("jarque_bera: need at least 4 residuals");
    double mean = 0.0;
    for (double e : residuals) mean += e;
    mean /= (double)n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double e : residuals) {
        const double d = e - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= (double)n;
    m3 /= (double)n;
    m4 /= (double)n;
    if (m2 == 0.0)
        throw DegenerateResiduals("jarque_bera: residual variance is zero");
    JbResult out;
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2);
    out.jb_stat = (double)n / 6.0 *
                  (out.skewness * out.skewness +
                   (out.kurtosis - 3.0) * (out.kurtosis - 3.0) / 4.0);
    out.p_value = dist::chi2_tail(out.jb_stat, 2.0);
    out.normal = out.p_value > alpha;
    return out;
}

}  // namespace macrorisk
