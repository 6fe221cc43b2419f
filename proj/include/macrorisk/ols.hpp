#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "distributions.hpp"
#include "errors.hpp"

namespace macrorisk {

inline constexpr double kRankTol = 1e-10;
inline constexpr const char* kIntercept = "C";

struct DesignMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t n_rows() const { return columns.empty() ? 0 : columns[0].size(); }
    std::size_t n_cols() const { return columns.size(); }

    void add(const std::string& name, std::vector<double> values) {
        for (const auto& nm : names)
            if (nm == name) throw DuplicateColumn("duplicate design column " + name);
        if (!columns.empty() && values.size() != n_rows())
            throw RowWidthMismatch("design column " + name + " length mismatch");
        for (double v : values)
            if (!std::isfinite(v))
                throw NonFiniteValue("non-finite entry in design column " + name);
        names.push_back(name);
        columns.push_back(std::move(values));
    }

    void add_intercept(std::size_t n) {
        add(kIntercept, std::vector<double>(n, 1.0));
    }
};

// Left-to-right Gram-Schmidt rank rule: keep a column iff its residual after
// projecting on previously kept columns exceeds kRankTol times its own norm.
// Two projection passes for numerical safety.
inline std::vector<std::size_t> collinear_drop(
    const std::vector<std::vector<double>>& columns, double tol = kRankTol) {
    std::vector<std::size_t> kept;
    std::vector<std::vector<double>> basis;
    for (std::size_t idx = 0; idx < columns.size(); ++idx) {
        std::vector<double> v = columns[idx];
        double norm0 = 0.0;
        for (double x : v) norm0 += x * x;
        norm0 = std::sqrt(norm0);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                double dot = 0.0;
                for (std::size_t i = 0; i < v.size(); ++i) dot += b[i] * v[i];
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * b[i];
            }
        }
        double rnorm = 0.0;
        for (double x : v) rnorm += x * x;
        rnorm = std::sqrt(rnorm);
        if (norm0 == 0.0 || rnorm < tol * norm0) continue;
        kept.push_back(idx);
        for (double& x : v) x /= rnorm;
        basis.push_back(std::move(v));
    }
    return kept;
}

struct OlsFit {
    std::string dependent;
    std::vector<std::string> names;
    std::vector<double> beta;
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values;
    std::vector<double> residuals;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double ssr = 0.0;
    double dw = 0.0;
    std::size_t dof = 0;
    std::size_t n_obs = 0;

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw MissingRegressor("no regressor named " + name);
    }
    bool has(const std::string& name) const {
        for (const auto& nm : names)
            if (nm == name) return true;
        return false;
    }
    double coef(const std::string& name) const { return beta[index_of(name)]; }
    double std_error(const std::string& name) const { return std_errors[index_of(name)]; }
    double t_stat(const std::string& name) const { return t_stats[index_of(name)]; }
    double p_value(const std::string& name) const { return p_values[index_of(name)]; }
};

// OLS through a Householder QR of the design; standard errors from
// s^2 (X'X)^{-1} recovered via the triangular factor. R^2 uses centered
// total variation even without an intercept (may then go negative).
inline OlsFit fit(const std::string& dependent, const std::vector<double>& y,
                  const DesignMatrix& X) {
    const std::size_t n = y.size(), k = X.n_cols();
    if (k == 0) throw RankDeficient("empty design");
    if (X.n_rows() != n) throw RowWidthMismatch("y/design length mismatch");
    if (n <= k)
        throw InsufficientObservations("n=" + std::to_string(n) +
                                       " <= k=" + std::to_string(k));
    const auto kept = collinear_drop(X.columns);
    if (kept.size() != k) {
        std::string dropped;
        for (std::size_t i = 0; i < k; ++i) {
            bool in = false;
            for (auto j : kept) in = in || j == i;
            if (!in) dropped += (dropped.empty() ? "" : ", ") + X.names[i];
        }
        throw RankDeficient("collinear design column(s): " + dropped);
    }

    Eigen::MatrixXd M(n, k);
    Eigen::VectorXd yv(n);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) M((Eigen::Index)i, (Eigen::Index)j) = X.columns[j][i];
    for (std::size_t i = 0; i < n; ++i) yv((Eigen::Index)i) = y[i];

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::VectorXd b = qr.solve(yv);
    Eigen::VectorXd resid = yv - M * b;

    OlsFit out;
    out.dependent = dependent;
    out.names = X.names;
    out.n_obs = n;
    out.dof = n - k;
    out.beta.resize(k);
    for (std::size_t j = 0; j < k; ++j) out.beta[j] = b((Eigen::Index)j);
    out.residuals.resize(n);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.residuals[i] = resid((Eigen::Index)i);
        ssr += out.residuals[i] * out.residuals[i];
    }
    out.ssr = ssr;

    const double s2 = ssr / (double)out.dof;
    Eigen::MatrixXd R = qr.matrixQR().topRows((Eigen::Index)k)
                            .triangularView<Eigen::Upper>();
    Eigen::MatrixXd Rinv = R.triangularView<Eigen::Upper>()
                               .solve(Eigen::MatrixXd::Identity(
                                   (Eigen::Index)k, (Eigen::Index)k));
    out.std_errors.resize(k);
    out.t_stats.resize(k);
    out.p_values.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double xtx_inv_jj = Rinv.row((Eigen::Index)j).squaredNorm();
        out.std_errors[j] = std::sqrt(s2 * xtx_inv_jj);
        if (out.std_errors[j] > 0.0) {
            out.t_stats[j] = out.beta[j] / out.std_errors[j];
            out.p_values[j] =
                dist::student_t_two_sided(out.t_stats[j], (double)out.dof);
        } else if (out.beta[j] == 0.0) {
            out.t_stats[j] = 0.0;
            out.p_values[j] = 1.0;
        } else {
            out.t_stats[j] = out.beta[j] > 0
                                 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
            out.p_values[j] = 0.0;
        }
    }

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += y[i];
    mean /= (double)n;
    double sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) sst += (y[i] - mean) * (y[i] - mean);
    out.r_squared = sst > 0.0 ? 1.0 - ssr / sst : (ssr == 0.0 ? 1.0 : 0.0);
    out.adj_r_squared =
        1.0 - (1.0 - out.r_squared) * (double)(n - 1) / (double)out.dof;

    double num = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = out.residuals[i] - out.residuals[i - 1];
        num += d * d;
    }
    out.dw = ssr > 0.0 ? num / ssr : 0.0;
    return out;
}

// intercept ("C") plus sum of coefficient * supplied regressor value
inline double predict(const std::map<std::string, double>& coefficients,
                      const std::map<std::string, double>& x) {
    double acc = 0.0;
    for (const auto& [name, coef] : coefficients) {
        if (name == kIntercept) {
            acc += coef;
            continue;
        }
        auto it = x.find(name);
        if (it == x.end())
            throw MissingRegressor("predict: no value for " + name);
        acc += coef * it->second;
    }
    return acc;
}

inline double t_critical(std::size_t dof, double alpha) {
    return dist::t_critical((int)dof, alpha);
}

}  // namespace macrorisk
