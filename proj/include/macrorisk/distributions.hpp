#pragma once

// Tail probabilities via regularized incomplete gamma/beta functions
// (series + Lentz continued fractions). Good to ~1e-12 relative in the
// ranges exercised here; checked against published table values.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace macrorisk::dist {

namespace detail {

inline constexpr int kMaxIter = 500;
inline constexpr double kEps = 1e-16;
inline constexpr double kFpMin = 1e-300;

// continued fraction for the incomplete beta (Numerical Recipes form)
inline double betacf(double a, double b, double x) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// regularized incomplete beta I_x(a, b)
inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                               std::lgamma(b) + a * std::log(x) +
                               b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * detail::betacf(a, b, x) / a;
    return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

// regularized lower incomplete gamma P(a, x)
inline double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_contfrac(a, x);
}

// regularized upper incomplete gamma Q(a, x)
inline double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_contfrac(a, x);
}

// two-sided Student-t tail: P(|T_dof| >= |t|)
inline double student_t_two_sided(double t, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("student_t_two_sided: dof <= 0");
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    const double x = dof / (dof + t * t);
    return incomplete_beta(dof / 2.0, 0.5, x);
}

// upper chi-square tail: P(X2_df >= x)
inline double chi2_tail(double x, double df) {
    if (df <= 0.0) throw std::invalid_argument("chi2_tail: df <= 0");
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

// upper F tail: P(F_{d1,d2} >= f)
inline double f_tail(double f, double d1, double d2) {
    if (d1 <= 0.0 || d2 <= 0.0) throw std::invalid_argument("f_tail: df <= 0");
    if (f <= 0.0) return 1.0;
    return incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

// two-sided Student-t critical value: the t >= 0 with P(|T| >= t) = alpha
inline double t_critical(int dof, double alpha) {
    if (dof < 1) throw std::invalid_argument("t_critical: dof < 1");
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("t_critical: alpha outside (0, 1]");
    if (alpha == 1.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (student_t_two_sided(hi, dof) > alpha) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_two_sided(mid, dof) > alpha)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace macrorisk::dist
