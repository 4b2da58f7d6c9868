#include "fg/laurent.hpp"

#include <cmath>

#include "fg/qseries.hpp"

namespace fg {

Scalar self_orth_coeff_residual(const BilateralSeries2& s, int m, int i, int j,
                                int k) {
    return s.at(m, i) * s.at(k, j) - s.at(k, i) * s.at(m, j) +
           s.at(k, m) * s.at(i, j);
}

Scalar cross_orth_coeff_residual(const BilateralSeries2& g,
                                 const BilateralSeries2& f, int m, int i, int j,
                                 int k) {
    return g.at(m, i) * f.at(k, j) - g.at(m, j) * f.at(k, i) +
           g.at(i, j) * f.at(k, m);
}

Scalar pivot_self_orth_residual(const BilateralSeries2& g, const Pivot& p, int i,
                                int j) {
    const Scalar pivot = g.at(p.m0, p.k0);
    if (std::abs(pivot) == 0.0)
        throw ZeroPivot("pivot coefficient vanishes");
    return pivot * g.at(i, j) - g.at(p.m0, i) * g.at(p.k0, j) +
           g.at(p.m0, j) * g.at(p.k0, i);
}

BilateralSeries2 construct_self_orthogonal(const UnivariateSeries& P,
                                           const UnivariateSeries& Q) {
    const int w = std::min(P.window, Q.window);
    BilateralSeries2 out(w);
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            out.set(i, j, P.at(i) * Q.at(j) - P.at(j) * Q.at(i));
    return out;
}

BilateralSeries2 construct_orthogonal_to(const BilateralSeries2& g,
                                         const UnivariateSeries& P,
                                         const UnivariateSeries& Q,
                                         const Pivot& p) {
    const Scalar pivot = g.at(p.m0, p.k0);
    if (std::abs(pivot) == 0.0) throw ZeroPivot("pivot coefficient vanishes");
    // precondition: g must be self-orthogonal at the pivot
    const double scale = std::max(g.max_abs() * g.max_abs(), 1e-30);
    if (scan_pivot(g, p) > 1e-10 * scale)
        throw NotSelfOrthogonal("series fails the pivot criterion");
    const int w = std::min({g.window, P.window, Q.window});
    BilateralSeries2 out(w);
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            out.set(i, j, (P.at(i) * g.at(p.m0, j) - Q.at(i) * g.at(p.k0, j)) / pivot);
    return out;
}

UnivariateSeries coeff_slice(const BilateralSeries2& g, int m0) {
    if (!g.in_window(m0)) throw IndexOutOfWindow("slice index out of window");
    UnivariateSeries out(g.window);
    for (int j = -g.window; j <= g.window; ++j) out.set(j, g.at(m0, j));
    return out;
}

BilateralSeries2 theta_pair_series(Scalar q, int window, const Truncation& tr) {
    if (std::abs(q) >= 1.0)
        throw BaseNotContracting("theta_pair_series requires |q| < 1");
    if (window < 4) throw std::invalid_argument("window must be >= 4");
    const Scalar qq2 = qpochhammer_inf(q, q, tr) * qpochhammer_inf(q, q, tr);
    UnivariateSeries P(window), Q(window);
    // P carries the even powers, Q the odd ones. Q is rescaled by the
    // reciprocal of its pivot coefficient q_1 = -1/(q;q)_inf^2, i.e.
    // multiplied by -(q;q)_inf^2, so that P Q-antisymmetrization reproduces
    // y theta(x y) theta(x/y) exactly (not just up to a constant).
    for (int i = -window; i <= window; ++i) {
        if (i % 2 == 0) {
            const int m = i / 2;
            P.set(i, std::pow(q, Scalar(double(m) * m - m)) / qq2);
        } else {
            const int m = (i - 1) / 2;  // i odd: i = 2m+1 (floor division is fine
                                        // for negatives since i-1 is even)
            const Scalar base = -std::pow(q, Scalar(double(m) * m)) / qq2;
            Q.set(i, base * (-qq2));
        }
    }
    return construct_self_orthogonal(P, Q);
}

Scalar eval_series(const BilateralSeries2& s, Scalar x, Scalar y) {
    if (std::abs(x) == 0.0 || std::abs(y) == 0.0)
        throw ZeroArgument("eval_series: x and y must be nonzero");
    const int w = s.window;
    // powers by running products (x^i for i in [-w, w])
    std::vector<Scalar> xp(2 * w + 1), yp(2 * w + 1);
    xp[w] = 1.0;
    yp[w] = 1.0;
    for (int i = 1; i <= w; ++i) {
        xp[w + i] = xp[w + i - 1] * x;
        xp[w - i] = xp[w - i + 1] / x;
        yp[w + i] = yp[w + i - 1] * y;
        yp[w - i] = yp[w - i + 1] / y;
    }
    Scalar sum = 0.0;
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            sum += s.at(i, j) * xp[w + i] * yp[w + j];
    return sum;
}

double scan_self_orth(const BilateralSeries2& s) {
    const int w = s.window;
    double worst = 0.0;
    for (int m = -w; m <= w; ++m)
        for (int i = -w; i <= w; ++i)
            for (int j = -w; j <= w; ++j)
                for (int k = -w; k <= w; ++k)
                    worst = std::max(worst,
                                     std::abs(self_orth_coeff_residual(s, m, i, j, k)));
    return worst;
}

double scan_cross_orth(const BilateralSeries2& g, const BilateralSeries2& f) {
    const int w = std::min(g.window, f.window);
    double worst = 0.0;
    for (int m = -w; m <= w; ++m)
        for (int i = -w; i <= w; ++i)
            for (int j = -w; j <= w; ++j)
                for (int k = -w; k <= w; ++k)
                    worst = std::max(
                        worst, std::abs(cross_orth_coeff_residual(g, f, m, i, j, k)));
    return worst;
}

double scan_pivot(const BilateralSeries2& g, const Pivot& p) {
    const int w = g.window;
    double worst = 0.0;
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            worst = std::max(worst, std::abs(pivot_self_orth_residual(g, p, i, j)));
    return worst;
}

}  // namespace fg
