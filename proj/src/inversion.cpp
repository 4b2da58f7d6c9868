#include "fg/inversion.hpp"

#include <cmath>

#include "fg/qseries.hpp"

namespace fg {

MatrixWindow build_F(const FunctionPair& pair, const ParamEnv& env,
                     const IndexedSequence& xs, const IndexedSequence& bs,
                     int lo, int hi) {
    MatrixWindow F(lo, hi, lo, hi);
    for (int n = lo; n <= hi; ++n) {
        for (int k = lo; k <= n; ++k) {
            const Scalar num = gen_product(
                [&](int i) { return pair.f(xs(i), bs(k), env); }, k, n - 1);
            const Scalar den = gen_product(
                [&](int i) { return pair.g(bs(i), bs(k), env); }, k + 1, n);
            if (std::abs(den) == 0.0)
                throw PoleError("build_F: vanishing denominator at (n,k)=(" +
                                std::to_string(n) + "," + std::to_string(k) + ")");
            F.set(n, k, num / den);
        }
    }
    return F;
}

MatrixWindow build_G(const FunctionPair& pair, const ParamEnv& env,
                     const IndexedSequence& xs, const IndexedSequence& bs,
                     int lo, int hi) {
    MatrixWindow G(lo, hi, lo, hi);
    for (int n = lo; n <= hi; ++n) {
        const Scalar fn = pair.f(xs(n), bs(n), env);
        if (std::abs(fn) == 0.0)
            throw PoleError("build_G: f(x_n, b_n) = 0 at n=" + std::to_string(n));
        for (int k = lo; k <= n; ++k) {
            const Scalar num = gen_product(
                [&](int i) { return pair.f(xs(i), bs(n), env); }, k + 1, n);
            const Scalar den = gen_product(
                [&](int i) { return pair.g(bs(i), bs(n), env); }, k, n - 1);
            if (std::abs(den) == 0.0)
                throw PoleError("build_G: vanishing denominator at (n,k)=(" +
                                std::to_string(n) + "," + std::to_string(k) + ")");
            G.set(n, k, pair.f(xs(k), bs(k), env) / fn * num / den);
        }
    }
    return G;
}

InverseCheckResult verify_inverse(const MatrixWindow& F, const MatrixWindow& G,
                                  double tol) {
    InverseCheckResult res;
    const int lo = F.row_lo, hi = F.row_hi;
    for (int n = lo; n <= hi; ++n) {
        // row scale guards against windows where entries grow quickly
        double scale_f = 0.0, scale_g = 0.0;
        for (int i = lo; i <= hi; ++i) {
            scale_f = std::max(scale_f, std::abs(F.at(n, i)));
            scale_g = std::max(scale_g, std::abs(G.at(n, i)));
        }
        scale_f = std::max(scale_f, 1.0);
        scale_g = std::max(scale_g, 1.0);
        for (int k = lo; k <= hi; ++k) {
            Scalar fg = 0.0, gf = 0.0;
            for (int i = lo; i <= hi; ++i) {
                fg += F.at(n, i) * G.at(i, k);
                gf += G.at(n, i) * F.at(i, k);
            }
            const Scalar delta = (n == k) ? Scalar(1.0) : Scalar(0.0);
            res.max_residual_fg =
                std::max(res.max_residual_fg, std::abs(fg - delta) / scale_f);
            res.max_residual_gf =
                std::max(res.max_residual_gf, std::abs(gf - delta) / scale_g);
        }
    }
    res.pass = res.max_residual_fg <= tol && res.max_residual_gf <= tol;
    return res;
}

Scalar zero_sum_residual(const FunctionPair& pair, const ParamEnv& env,
                         const IndexedSequence& as_, const IndexedSequence& bs,
                         int m, int n) {
    if (m < 0 || n < 1)
        throw std::invalid_argument("zero_sum_residual needs m >= 0, n >= 1");
    Scalar sum = 0.0;
    const Scalar bm = bs(m), bn = bs(-n);
    for (int k = -n; k <= m; ++k) {
        Scalar t = pair.f(as_(k), bs(k), env);
        t *= gen_product([&](int j) { return pair.g(bs(j), bm, env); }, m, k - 1);
        t *= inv_gen_product([&](int j) { return pair.f(as_(j), bm, env); }, m, k);
        t *= gen_product([&](int j) { return pair.f(as_(j), bn, env); }, 1, k - 1);
        t *= inv_gen_product([&](int j) { return pair.g(bs(j), bn, env); }, 1, k);
        sum += t;
    }
    return sum;
}

namespace {

// One-sided product ratios used in the bilateral limit. Factors tend to 1
// as |j| grows, so a fixed truncation with a tail gate suffices.
Scalar ratio_forward(const FunctionPair& pair, const ParamEnv& env,
                     const IndexedSequence& as_, const IndexedSequence& bs,
                     Scalar AM, Scalar AN, int terms) {
    Scalar p = 1.0;
    for (int j = 1; j <= terms; ++j) {
        p *= pair.f(as_(j), AM, env) / pair.f(as_(j), AN, env);
        p *= pair.g(bs(j), AN, env) / pair.g(bs(j), AM, env);
    }
    return p;
}

Scalar ratio_backward(const FunctionPair& pair, const ParamEnv& env,
                      const IndexedSequence& as_, const IndexedSequence& bs,
                      Scalar AM, Scalar AN, int terms) {
    Scalar p = 1.0;
    for (int j = 0; j <= terms; ++j) {
        p *= pair.f(as_(-j), AN, env) / pair.f(as_(-j), AM, env);
        p *= pair.g(bs(-j), AM, env) / pair.g(bs(-j), AN, env);
    }
    return p;
}

}  // namespace

BilateralHResult bilateral_h(const FunctionPair& pair, const ParamEnv& env,
                             const IndexedSequence& as_, const IndexedSequence& bs,
                             const IndexedSequence& A, int M, const Truncation& tr) {
    BilateralHResult out;
    const Scalar AM = A(M);
    const int terms = tr.product_terms;

    // hypothesis check at a finite separation: forward and backward infinite
    // product ratios must agree for the bilateral sum to telescope.
    {
        const Scalar AN = A(M + 2);
        const Scalar rf = ratio_forward(pair, env, as_, bs, AM, AN, terms);
        const Scalar rb = ratio_backward(pair, env, as_, bs, AM, AN, terms);
        out.ratio_hypothesis_residual = rel_residual(rf, rb);
        out.hypothesis_ok = out.ratio_hypothesis_residual <= 1e-6;
    }

    const int levels = 6;
    std::vector<Scalar> vals;
    double eps = 1e-3;
    for (int l = 0; l < levels; ++l) {
        const Scalar AN = AM * (1.0 + eps);
        const Scalar num = ratio_forward(pair, env, as_, bs, AM, AN, terms) -
                           ratio_backward(pair, env, as_, bs, AM, AN, terms);
        const Scalar den = pair.g(AM, AN, env);
        if (std::abs(den) == 0.0)
            throw PoleError("bilateral_h: g(A_M, A_N) vanished before the limit");
        vals.push_back(num / den);
        eps /= 2.0;
    }
    // Richardson elimination of the O(eps) error term (halving steps)
    std::vector<Scalar> prev;
    while (vals.size() > 1) {
        prev = vals;
        std::vector<Scalar> next;
        for (size_t i = 0; i + 1 < vals.size(); ++i)
            next.push_back(2.0 * vals[i + 1] - vals[i]);
        vals = std::move(next);
    }
    out.value = vals[0];
    if (prev.size() >= 2)
        out.last_step_change = rel_residual(prev[prev.size() - 2], prev.back());
    if (out.last_step_change > 1e-6)
        throw NonconvergentLimit("bilateral_h: extrapolants disagree");
    return out;
}

std::pair<Scalar, Scalar> schlosser_entries(Scalar a, Scalar b, Scalar c,
                                            Scalar q, int n, int k,
                                            const Truncation& tr) {
    const Scalar pre_num = qpochhammer_inf_all(
        {a * q / b, b * q / a, a * q / c, c * q / a, b * q, q / b, c * q, q / c},
        q, tr);
    const Scalar pre_den = qpochhammer_inf_all(
        {q, q, a * q, q / a, a * q / (b * c), b * c * q / a, c * q / b, b * q / c},
        q, tr);
    const Scalar A =
        pre_num / pre_den *
        (1.0 - b * c * std::pow(q, 2.0 * n) / a) / (1.0 - b * c / a) *
        qpochhammer(b, q, n + k) * qpochhammer(a / c, q, k - n) /
        (qpochhammer(c * q, q, n + k) * qpochhammer(a * q / b, q, k - n));
    const Scalar B =
        (1.0 - a * std::pow(q, 2.0 * n)) / (1.0 - a) *
        qpochhammer(c, q, n + k) * qpochhammer(a / b, q, n - k) /
        (qpochhammer(b * q, q, n + k) * qpochhammer(a * q / c, q, n - k)) *
        std::pow(q, double(n - k));
    return {A, B};
}

Scalar schlosser_h_closed(Scalar a, Scalar b, Scalar c, Scalar q, int M,
                          const Truncation& tr) {
    // h(M) for f = g = (y-x)(1 - (a/bc) x y), a_j = b q^j, b_j = c q^j,
    // A_n = q^{-n}. Derived from the diagonal factorization of the bilateral
    // product (the separate closed-form display in the source text is
    // misprinted; this version matches the limit and the diagonal sum to
    // machine precision).
    const Scalar inf_num = qpochhammer_inf_all(
        {q, q, a * q, q / a, a * q / (b * c), b * c * q / a, c * q / b, b * q / c},
        q, tr);
    const Scalar inf_den = qpochhammer_inf_all(
        {a * q / b, b * q / a, a * q / c, c * q / a, b * q, q / b, c * q, q / c},
        q, tr);
    const Scalar rational = (1.0 - a) * (c - b) * (1.0 - b * c / a) *
                            std::pow(q, 3.0 * M) /
                            ((1.0 - b) * (1.0 - c) * (1.0 - a / b) *
                             (1.0 - a / c) *
                             (1.0 - b * c * std::pow(q, 2.0 * M) / a));
    return rational * inf_num / inf_den;
}

Scalar schlosser_h_diagonal(Scalar a, Scalar b, Scalar c, Scalar q, int M,
                            int K) {
    const auto f = [&](Scalar x, Scalar y) {
        return (y - x) * (1.0 - (a / (b * c)) * x * y);
    };
    const auto aj = [&](int j) { return b * std::pow(q, double(j)); };
    const auto bj = [&](int j) { return c * std::pow(q, double(j)); };
    const Scalar AM = std::pow(q, double(-M));

    // k = 0 term via the generalized-product convention:
    //   P_{M,0} = f(a_0,b_0) * [prod_{j=1}^{-1} f(a_j,A_M)] / [prod_{j=1}^{0} f(b_j,A_M)]
    //           = f(a_0,b_0) / f(a_0,A_M)
    //   G_{0,M} = [prod_{j=1}^{-1} f(b_j,A_M)] / [prod_{j=1}^{0} f(a_j,A_M)]
    //           = 1 / f(b_0,A_M)
    const Scalar P0 = f(aj(0), bj(0)) *
                      gen_product([&](int j) { return f(aj(j), AM); }, 1, -1) *
                      inv_gen_product([&](int j) { return f(bj(j), AM); }, 1, 0);
    const Scalar G0 = gen_product([&](int j) { return f(bj(j), AM); }, 1, -1) *
                      inv_gen_product([&](int j) { return f(aj(j), AM); }, 1, 0);

    Scalar sum = P0 * G0;
    // advance outward by exact term ratios; the one-sided products that make
    // up each term individually overflow for large |k| even though the terms
    // themselves decay geometrically.
    Scalar t = P0 * G0;
    for (int k = 0; k < K; ++k) {
        const Scalar r = (f(aj(k + 1), bj(k + 1)) / f(aj(k), bj(k))) *
                         (f(aj(k), AM) * f(bj(k), AM)) /
                         (f(bj(k + 1), AM) * f(aj(k + 1), AM));
        t *= r;
        sum += t;
    }
    t = P0 * G0;
    for (int k = 0; k > -K; --k) {
        const Scalar r = (f(aj(k), bj(k)) / f(aj(k - 1), bj(k - 1))) *
                         (f(aj(k - 1), AM) * f(bj(k - 1), AM)) /
                         (f(bj(k), AM) * f(aj(k), AM));
        t /= r;
        sum += t;
    }
    return sum;
}

double transformation_521_residual(Scalar a, Scalar b, Scalar c, Scalar d,
                                   Scalar q, const Truncation& tr) {
    // Three-term theta addition formula in (.;q)_inf product form:
    //   (bq, cq, dq, a^2 q/bcd)_inf (1/b, 1/c, 1/d, bcd/a^2)_inf
    // - (aq/b, aq/c, aq/d, bcdq/a)_inf (b/a, c/a, d/a, a/bcd)_inf
    // = (bcd/a^3) (a, q/a, a/bc, bcq/a, a/bd, bdq/a, a/cd, cdq/a)_inf
    const Scalar bcd = b * c * d;
    const Scalar t1 =
        qpochhammer_inf_all({b * q, c * q, d * q, a * a * q / bcd, 1.0 / b,
                             1.0 / c, 1.0 / d, bcd / (a * a)},
                            q, tr);
    const Scalar t2 =
        qpochhammer_inf_all({a * q / b, a * q / c, a * q / d, bcd * q / a,
                             b / a, c / a, d / a, a / bcd},
                            q, tr);
    const Scalar rhs =
        bcd / (a * a * a) *
        qpochhammer_inf_all({a, q / a, a / (b * c), b * c * q / a, a / (b * d),
                             b * d * q / a, a / (c * d), c * d * q / a},
                            q, tr);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(rhs),
                                   1e-30});
    return std::abs(t1 - t2 - rhs) / scale;
}

}  // namespace fg
