#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <macrorisk/diagnostics.hpp>
#include <macrorisk/ols.hpp>

using Catch::Approx;
using namespace macrorisk;

namespace {

std::vector<double> alternating(std::size_t n, double amp = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 ? -amp : amp);
    return v;
}

}  // namespace

TEST_CASE("durbin-watson closed forms") {
    // perfectly alternating residuals: DW = 4(n-1)/n
    for (std::size_t n : {4, 10, 100}) {
        const DwResult r = durbin_watson(alternating(n));
        CHECK(r.statistic == Approx(4.0 * (double)(n - 1) / (double)n)
                                 .margin(1e-14));
    }
    CHECK(durbin_watson(alternating(4)).statistic == Approx(3.0).margin(1e-14));
    CHECK(durbin_watson(alternating(100)).statistic ==
          Approx(3.96).margin(1e-14));

    // two up, two down
    const DwResult r = durbin_watson({1.0, 1.0, -1.0, -1.0});
    CHECK(r.statistic == Approx(1.0).margin(1e-14));
}

TEST_CASE("durbin-watson is scale free and bounded") {
    std::mt19937 rng(101);
    std::normal_distribution<> g(0.0, 1.0);
    std::vector<double> e(1000);
    for (double& x : e) x = g(rng);
    const double d = durbin_watson(e).statistic;
    CHECK(d >= 0.0);
    CHECK(d <= 4.0);

    std::vector<double> scaled(e);
    for (double& x : scaled) x *= 37.5;
    CHECK(durbin_watson(scaled).statistic == Approx(d).epsilon(1e-12));
}

TEST_CASE("durbin-watson verdicts against the practitioner band") {
    const DwBand band{1.0, 3.0};

    // the band is closed: 3.0 still counts as no autocorrelation
    CHECK(durbin_watson(alternating(4), band).verdict ==
          DwVerdict::NoAutocorr);

    // strongly trending residuals: small statistic
    const DwResult pos = durbin_watson({1.0, 1.1, 1.2, 1.3, 1.4}, band);
    CHECK(pos.statistic < 1.0);
    CHECK(pos.verdict == DwVerdict::PositiveAutocorr);

    // alternating residuals push past a tighter upper bound
    const DwResult neg = durbin_watson(alternating(100), DwBand{1.0, 3.9});
    CHECK(neg.statistic == Approx(3.96));
    CHECK(neg.verdict == DwVerdict::NegativeAutocorr);

    // defaults carried on the result; 1.117226 clears the default band
    const DwResult any = durbin_watson({1.0, 0.2, -0.6, -0.3, 0.5});
    CHECK(any.band.low == 1.0);
    CHECK(any.band.high == 3.0);
    CHECK((1.117226 >= any.band.low && 1.117226 <= any.band.high));
}

TEST_CASE("durbin-watson rejects degenerate input") {
    CHECK_THROWS_AS(durbin_watson({1.0}), SeriesTooShort);
    CHECK_THROWS_AS(durbin_watson({0.0, 0.0, 0.0}), DegenerateResiduals);
}

TEST_CASE("white test auxiliary layout with a collinear square") {
    // LOGPIB_VOL takes exactly two values a and b, so its square is the
    // affine combination (a+b)x - ab and must be dropped; with three
    // regressors that leaves nine auxiliary terms and chi-square df 8.
    const std::size_t n = 27;
    std::mt19937 rng(53);
    std::uniform_real_distribution<> u(0.0, 1.0);
    std::vector<double> debi(n), usd(n), pib(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        debi[i] = 0.05 + 0.02 * u(rng);
        usd[i] = 8.0 + u(rng);
        pib[i] = (i % 2 ? 12.25 : 12.5);
        y[i] = 0.5 + debi[i] - 0.01 * usd[i] + 0.002 * pib[i] + 0.05 * u(rng);
    }
    DesignMatrix X;
    X.add_intercept(n);
    X.add("TX_DEBI", debi);
    X.add("MAD_USD", usd);
    X.add("LOGPIB_VOL", pib);
    const OlsFit f = fit("TX_DEF", y, X);
    const WhiteResult w = white_test(f, X, 0.05);

    const std::vector<std::string> want = {
        "C",       "TX_DEBI",          "TX_DEBI^2", "TX_DEBI*MAD_USD",
        "TX_DEBI*LOGPIB_VOL", "MAD_USD", "MAD_USD^2", "MAD_USD*LOGPIB_VOL",
        "LOGPIB_VOL"};
    CHECK(w.aux_regressors == want);
    CHECK(w.dropped_collinear == std::vector<std::string>{"LOGPIB_VOL^2"});
    CHECK(w.df == 8);
    CHECK(w.obs_r_squared >= 0.0);
    CHECK(w.p_value > 0.0);
    CHECK(w.p_value <= 1.0);
}

TEST_CASE("white test full-rank layout and homoscedastic verdict") {
    const std::size_t n = 40;
    std::mt19937 rng(7);
    std::uniform_real_distribution<> u(-1.0, 1.0);
    std::vector<double> x1(n), x2(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = u(rng);
        x2[i] = u(rng);
        y[i] = 1.0 + x1[i] + 0.5 * x2[i] + 0.3 * u(rng);
    }
    DesignMatrix X;
    X.add_intercept(n);
    X.add("X1", x1);
    X.add("X2", x2);
    const OlsFit f = fit("Y", y, X);
    const WhiteResult w = white_test(f, X, 0.05);

    CHECK(w.aux_regressors ==
          std::vector<std::string>{"C", "X1", "X1^2", "X1*X2", "X2", "X2^2"});
    CHECK(w.dropped_collinear.empty());
    CHECK(w.df == 5);
    CHECK(w.obs_r_squared >= 0.0);
    CHECK(w.obs_r_squared <= (double)n);
    CHECK(w.homoscedastic == (w.p_value > 0.05));

    // without cross terms the product column disappears
    const WhiteResult nc = white_test(f, X, 0.05, false);
    CHECK(nc.aux_regressors ==
          std::vector<std::string>{"C", "X1", "X1^2", "X2", "X2^2"});
    CHECK(nc.df == 4);
}

TEST_CASE("white test obs-R2 is invariant to regressor scaling") {
    const std::size_t n = 30;
    std::mt19937 rng(19);
    std::uniform_real_distribution<> u(-1.0, 1.0);
    std::vector<double> x1(n), x2(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = u(rng);
        x2[i] = u(rng);
        y[i] = x1[i] - x2[i] + 0.2 * u(rng) * (1.0 + x1[i] * x1[i]);
    }
    DesignMatrix A;
    A.add_intercept(n);
    A.add("X1", x1);
    A.add("X2", x2);
    const OlsFit fa = fit("Y", y, A);
    const WhiteResult wa = white_test(fa, A, 0.05);

    std::vector<double> x1s(x1);
    for (double& v : x1s) v *= 250.0;
    DesignMatrix B;
    B.add_intercept(n);
    B.add("X1", x1s);
    B.add("X2", x2);
    const OlsFit fb = fit("Y", y, B);
    const WhiteResult wb = white_test(fb, B, 0.05);

    CHECK(wb.df == wa.df);
    CHECK(wb.obs_r_squared == Approx(wa.obs_r_squared).epsilon(1e-9));
    CHECK(wb.p_value == Approx(wa.p_value).epsilon(1e-9));
}

TEST_CASE("white test with constant squared residuals reports nothing to explain") {
    const std::size_t n = 12;
    OlsFit f;
    f.residuals = alternating(n, 0.5);
    std::mt19937 rng(3);
    std::uniform_real_distribution<> u(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    DesignMatrix X;
    X.add_intercept(n);
    X.add("X1", x);

    const WhiteResult w = white_test(f, X, 0.05);
    CHECK(w.obs_r_squared == 0.0);
    CHECK(w.p_value == 1.0);
    CHECK(w.f_statistic == 0.0);
    CHECK(w.homoscedastic);
    CHECK(std::string(w.verdict()) == "homoscedastic");
}

TEST_CASE("white test error paths") {
    const std::size_t n = 10;
    OlsFit zero;
    zero.residuals.assign(n, 0.0);
    DesignMatrix X;
    X.add_intercept(n);
    X.add("X1", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK_THROWS_AS(white_test(zero, X, 0.05), DegenerateResiduals);

    OlsFit ok;
    ok.residuals = alternating(n);
    ok.residuals[0] = 2.0;  // non-constant squares
    DesignMatrix onlyC;
    onlyC.add_intercept(n);
    CHECK_THROWS_AS(white_test(ok, onlyC, 0.05), RankDeficient);
}

TEST_CASE("jarque-bera on a four-point symmetric sample") {
    // {-1, 0, 0, 1}: S = 0, m2 = m4 = 1/2, K = 2, JB = n/6 * (K-3)^2/4 = 1/6
    const JbResult r = jarque_bera({-1.0, 0.0, 0.0, 1.0}, 0.05);
    CHECK(r.skewness == 0.0);
    CHECK(r.kurtosis == Approx(2.0).margin(1e-12));
    CHECK(r.jb_stat == Approx(1.0 / 6.0).margin(1e-12));
    CHECK(r.p_value == Approx(std::exp(-r.jb_stat / 2.0)).margin(1e-12));
    CHECK(r.normal);
}

TEST_CASE("jarque-bera vanishes when skewness is zero and kurtosis is three") {
    // {-a, -1 x3, 1 x3, a} with a^2 = 9 + 4 sqrt 6 has K = 3 exactly:
    // m2 = 3 + sqrt 6, m4 = 45 + 18 sqrt 6 = 3 m2^2
    const double a = std::sqrt(9.0 + 4.0 * std::sqrt(6.0));
    const JbResult r =
        jarque_bera({-a, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, a}, 0.05);
    CHECK(r.skewness == Approx(0.0).margin(1e-12));
    CHECK(r.kurtosis == Approx(3.0).margin(1e-12));
    CHECK(r.jb_stat < 1e-20);
    CHECK(r.p_value == Approx(1.0).margin(1e-9));
    CHECK(r.normal);
    CHECK(std::string(r.verdict()) == "normal");
}

TEST_CASE("jarque-bera moments under affine maps") {
    std::mt19937 rng(77);
    std::normal_distribution<> g(0.0, 1.0);
    std::vector<double> e(50);
    for (double& x : e) x = g(rng) + 0.3 * g(rng) * g(rng);  // some skew

    const JbResult base = jarque_bera(e, 0.05);

    std::vector<double> affine(e);
    for (double& x : affine) x = 2.5 * x - 7.0;
    const JbResult shifted = jarque_bera(affine, 0.05);
    CHECK(shifted.skewness == Approx(base.skewness).epsilon(1e-9));
    CHECK(shifted.kurtosis == Approx(base.kurtosis).epsilon(1e-9));
    CHECK(shifted.jb_stat == Approx(base.jb_stat).epsilon(1e-9));

    std::vector<double> flipped(e);
    for (double& x : flipped) x = -x;
    const JbResult neg = jarque_bera(flipped, 0.05);
    CHECK(neg.skewness == Approx(-base.skewness).epsilon(1e-9));
    CHECK(neg.kurtosis == Approx(base.kurtosis).epsilon(1e-9));
    CHECK(neg.jb_stat == Approx(base.jb_stat).epsilon(1e-9));
}

TEST_CASE("jarque-bera error paths") {
    CHECK_THROWS_AS(jarque_bera({1.0, 2.0, 3.0}, 0.05), SeriesTooShort);
    CHECK_THROWS_AS(jarque_bera({2.0, 2.0, 2.0, 2.0}, 0.05),
                    DegenerateResiduals);
}
