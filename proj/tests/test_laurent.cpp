#include "doctest.h"

#include <cmath>

#include "fg/laurent.hpp"
#include "fg/pairs.hpp"
#include "fg/qseries.hpp"

using namespace fg;

namespace {

const Truncation kTr;

// the series of x - y on a given window
BilateralSeries2 xy_series(int w) {
    BilateralSeries2 s(w);
    s.set(1, 0, 1.0);
    s.set(0, 1, -1.0);
    return s;
}

}  // namespace

TEST_CASE("windowed access guards") {
    UnivariateSeries u(2);
    CHECK_THROWS_AS(u.at(3), IndexOutOfWindow);
    CHECK_THROWS_AS(u.set(-3, 1.0), IndexOutOfWindow);
    BilateralSeries2 s(2);
    CHECK_THROWS_AS(s.at(0, 3), IndexOutOfWindow);
    CHECK_THROWS_AS((void)UnivariateSeries(0), std::invalid_argument);
}

TEST_CASE("coefficient residuals on the x - y series") {
    const BilateralSeries2 s = xy_series(3);
    for (int m = -3; m <= 3; ++m)
        for (int i = -3; i <= 3; ++i)
            for (int j = -3; j <= 3; ++j)
                for (int k = -3; k <= 3; ++k)
                    CHECK(std::abs(self_orth_coeff_residual(s, m, i, j, k)) == 0.0);
    // perturbation breaking antisymmetry is detected
    BilateralSeries2 t = xy_series(3);
    t.set(2, 0, 1.0);
    CHECK(std::abs(self_orth_coeff_residual(t, 2, 0, 1, 0)) > 0.1);
}

TEST_CASE("construct_self_orthogonal basics") {
    UnivariateSeries P(2), Q(2);
    P.set(1, 1.0);  // P = x
    Q.set(0, 1.0);  // Q = 1
    const BilateralSeries2 s = construct_self_orthogonal(P, Q);
    CHECK(s.at(1, 0).real() == doctest::Approx(1.0));
    CHECK(s.at(0, 1).real() == doctest::Approx(-1.0));
    CHECK(s.at(2, 2).real() == doctest::Approx(0.0));
    // P = Q gives the zero series
    const BilateralSeries2 z = construct_self_orthogonal(P, P);
    CHECK(z.max_abs() == 0.0);
}

TEST_CASE("random rank-2 series pass the exhaustive scan; generic ones fail") {
    Rng rng(77);
    const int w = 4;
    UnivariateSeries P(w), Q(w);
    for (int i = -w; i <= w; ++i) {
        P.set(i, rng.annulus(0.3, 1.0));
        Q.set(i, rng.annulus(0.3, 1.0));
    }
    const BilateralSeries2 s = construct_self_orthogonal(P, Q);
    const double scale = s.max_abs() * s.max_abs();
    CHECK(scan_self_orth(s) <= 1e-12 * scale);
    // antisymmetry is exact by construction
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            CHECK(std::abs(s.at(i, j) + s.at(j, i)) == 0.0);
    BilateralSeries2 generic(w);
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            generic.set(i, j, i == j ? Scalar(0.0) : rng.annulus(0.3, 1.0));
    CHECK(scan_self_orth(generic) > 1e-3);
}

TEST_CASE("pivot criterion") {
    const BilateralSeries2 s = xy_series(3);
    const Pivot p{1, 0};
    CHECK(scan_pivot(s, p) == 0.0);
    // S2 series: (y - x)(1 - x y / d), d = 2
    BilateralSeries2 s2(3);
    s2.set(0, 1, 1.0);
    s2.set(1, 0, -1.0);
    s2.set(1, 2, -0.5);
    s2.set(2, 1, 0.5);
    CHECK(scan_pivot(s2, Pivot{0, 1}) <= 1e-14);
    CHECK(scan_self_orth(s2) <= 1e-14);
    // perturbation is detected by the scan
    BilateralSeries2 s3 = s2;
    s3.set(2, 2, s3.at(2, 2) + 1.0);
    CHECK(scan_pivot(s3, Pivot{0, 1}) > 0.1);
    // zero pivot is refused
    CHECK_THROWS_AS(pivot_self_orth_residual(s2, Pivot{2, 2}, 0, 0), ZeroPivot);
}

TEST_CASE("construct_orthogonal_to and the cross scan") {
    Rng rng(31);
    const int w = 4;
    UnivariateSeries P(w), Q(w), P2(w), Q2(w);
    for (int i = -w; i <= w; ++i) {
        P.set(i, rng.annulus(0.3, 1.0));
        Q.set(i, rng.annulus(0.3, 1.0));
        P2.set(i, rng.annulus(0.3, 1.0));
        Q2.set(i, rng.annulus(0.3, 1.0));
    }
    const BilateralSeries2 g = construct_self_orthogonal(P, Q);
    const Pivot p{1, 0};
    const BilateralSeries2 f = construct_orthogonal_to(g, P2, Q2, p);
    CHECK(scan_cross_orth(g, f) <= 1e-12 * g.max_abs() * f.max_abs() * 10.0);
    // self-recovery: p_i = c(i, k0), q_i = c(i, m0) reproduces lambda = c
    UnivariateSeries Ps(w), Qs(w);
    for (int i = -w; i <= w; ++i) {
        Ps.set(i, g.at(i, p.k0));
        Qs.set(i, g.at(i, p.m0));
    }
    const BilateralSeries2 self = construct_orthogonal_to(g, Ps, Qs, p);
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            CHECK(std::abs(self.at(i, j) - g.at(i, j)) <=
                  1e-12 * std::max(1.0, g.max_abs()));
    // non-self-orthogonal g is refused
    BilateralSeries2 generic(w);
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j) generic.set(i, j, rng.annulus(0.3, 1.0));
    CHECK_THROWS_AS(construct_orthogonal_to(generic, P2, Q2, p),
                    NotSelfOrthogonal);
}

TEST_CASE("coefficient slices") {
    const BilateralSeries2 s = xy_series(3);
    const UnivariateSeries row1 = coeff_slice(s, 1);
    CHECK(row1.at(0).real() == doctest::Approx(1.0));
    CHECK(row1.at(1).real() == doctest::Approx(0.0));
    const UnivariateSeries row0 = coeff_slice(s, 0);
    CHECK(row0.at(1).real() == doctest::Approx(-1.0));
    CHECK_THROWS_AS(coeff_slice(s, 4), IndexOutOfWindow);
}

TEST_CASE("series evaluation") {
    const BilateralSeries2 s = xy_series(3);
    CHECK(eval_series(s, 2.0, 3.0).real() == doctest::Approx(-1.0));
    CHECK(std::abs(eval_series(s, 1.7, 1.7)) <= 1e-14);
    CHECK_THROWS_AS(eval_series(s, 0.0, 1.0), ZeroArgument);
}

TEST_CASE("theta coefficient series") {
    const Scalar q = 0.3;
    const BilateralSeries2 s = theta_pair_series(q, 12, kTr);
    const double scale = s.max_abs() * s.max_abs();
    // construct_self_orthogonal output is always self-orthogonal
    BilateralSeries2 small = theta_pair_series(q, 5, kTr);
    CHECK(scan_self_orth(small) <= 1e-12 * small.max_abs() * small.max_abs());
    (void)scale;
    // the (0,1) coefficient after the folded normalization is +1/(q;q)_inf^2
    const Scalar qq2 = qpochhammer_inf(q, q, kTr) * qpochhammer_inf(q, q, kTr);
    CHECK(std::abs(s.at(0, 1) - 1.0 / qq2) <= 1e-13);
    // pointwise agreement with y theta(x y) theta(x/y)
    const double pts[][2] = {{0.8, 1.2}, {1.3, 0.6}, {0.55, 1.45}, {1.0, 0.7}};
    for (const auto& p : pts) {
        const Scalar lhs = eval_series(s, p[0], p[1]);
        const Scalar rhs =
            p[1] * theta(p[0] * p[1], q, kTr) * theta(p[0] / p[1], q, kTr);
        CHECK(rel_residual(lhs, rhs) <= 1e-8);
    }
    CHECK_THROWS_AS(theta_pair_series(1.1, 12, kTr), BaseNotContracting);
    CHECK_THROWS_AS(theta_pair_series(0.3, 2, kTr), std::invalid_argument);
}

TEST_CASE("functional consistency with the pointwise orthogonality residual") {
    // evaluate a constructed rank-2 series as a function pair and feed it to
    // the pointwise three-term residual
    Rng rng(13);
    const int w = 4;
    UnivariateSeries P(w), Q(w);
    for (int i = -w; i <= w; ++i) {
        P.set(i, rng.annulus(0.3, 1.0));
        Q.set(i, rng.annulus(0.3, 1.0));
    }
    const BilateralSeries2 s = construct_self_orthogonal(P, Q);
    FunctionPair p;
    p.name = "constructed";
    p.f = [&s](Scalar x, Scalar y, const ParamEnv&) { return eval_series(s, x, y); };
    p.g = p.f;
    for (int i = 0; i < 100; ++i) {
        const Scalar a = rng.annulus(0.5, 1.4), b = rng.annulus(0.5, 1.4);
        const Scalar c = rng.annulus(0.5, 1.4), x = rng.annulus(0.5, 1.4);
        const Scalar r = orthogonality_residual(p, ParamEnv{}, a, b, c, x);
        const double scale =
            std::max({std::abs(p.f(a, b, ParamEnv{}) * p.f(x, c, ParamEnv{})),
                      1.0});
        CHECK(std::abs(r) <= 1e-10 * scale);
    }
}
