#include "fg/qseries.hpp"

#include <cmath>

namespace fg {

Scalar qpochhammer(Scalar a, Scalar q, int n) {
    if (n >= 0) {
        Scalar p = 1.0;
        Scalar qi = 1.0;
        for (int i = 0; i < n; ++i) {
            p *= 1.0 - a * qi;
            qi *= q;
        }
        return p;
    }
    // reciprocal extension: 1 / prod_{j=1}^{-n} (1 - a q^{-j})
    Scalar p = 1.0;
    Scalar qi = 1.0;
    for (int j = 1; j <= -n; ++j) {
        qi /= q;
        const Scalar factor = 1.0 - a * qi;
        if (std::abs(factor) == 0.0)
            throw PoleError("qpochhammer: zero factor at negative index j=" +
                            std::to_string(-j));
        p *= factor;
    }
    return 1.0 / p;
}

Scalar qpochhammer_inf(Scalar a, Scalar q, const Truncation& tr) {
    tr.validate();
    if (std::abs(q) >= 1.0)
        throw BaseNotContracting("qpochhammer_inf requires |q| < 1");
    Scalar p = 1.0;
    Scalar qi = 1.0;
    for (int i = 0; i < tr.product_terms; ++i) {
        p *= 1.0 - a * qi;
        if (i + 1 < tr.product_terms) qi *= q;
    }
    // qi now holds q^{product_terms-1}; the last dropped deviation from 1
    // is a q^{product_terms}, but we gate on the last *retained* factor.
    if (std::abs(a * qi) > tr.tail_tol)
        throw TruncationInsufficient(
            "qpochhammer_inf: tail factor above tail_tol; raise product_terms");
    return p;
}

Scalar qpochhammer_inf_all(std::initializer_list<Scalar> as, Scalar q,
                           const Truncation& tr) {
    Scalar p = 1.0;
    for (const Scalar& a : as) p *= qpochhammer_inf(a, q, tr);
    return p;
}

Scalar gen_product(const std::function<Scalar(int)>& factor, int k, int m) {
    if (m >= k) {
        Scalar p = 1.0;
        for (int j = k; j <= m; ++j) p *= factor(j);
        return p;
    }
    if (m == k - 1) return 1.0;
    Scalar p = 1.0;
    for (int j = m + 1; j <= k - 1; ++j) {
        const Scalar f = factor(j);
        if (std::abs(f) == 0.0)
            throw PoleError("gen_product: zero factor in reciprocal case at j=" +
                            std::to_string(j));
        p *= f;
    }
    return 1.0 / p;
}

Scalar inv_gen_product(const std::function<Scalar(int)>& factor, int k, int m) {
    if (m >= k) {
        Scalar p = 1.0;
        for (int j = k; j <= m; ++j) {
            const Scalar f = factor(j);
            if (std::abs(f) == 0.0)
                throw PoleError("inv_gen_product: zero factor at j=" +
                                std::to_string(j));
            p *= f;
        }
        return 1.0 / p;
    }
    if (m == k - 1) return 1.0;
    Scalar p = 1.0;
    for (int j = m + 1; j <= k - 1; ++j) p *= factor(j);
    return p;
}

Scalar theta(Scalar x, Scalar q, const Truncation& tr) {
    if (std::abs(x) == 0.0) throw ZeroArgument("theta: x must be nonzero");
    return qpochhammer_inf(x, q, tr) * qpochhammer_inf(q / x, q, tr);
}

double jacobi_triple_residual(Scalar x, Scalar q, const Truncation& tr) {
    if (std::abs(x) == 0.0) throw ZeroArgument("jacobi_triple_residual: x = 0");
    const int N = tr.series_terms;
    // term(i) = (-1)^i q^binom(i,2) x^i; binom(i,2) = i(i-1)/2 >= 0 for all i.
    // Accumulate by the exact ratio term(i+1)/term(i) = -q^i x to keep every
    // term a plain product (no pow on complex arguments).
    Scalar sum = 1.0;  // i = 0
    Scalar term = 1.0, qi = 1.0;
    for (int i = 0; i < N; ++i) {
        term *= -qi * x;  // advance i -> i+1
        qi *= q;
        sum += term;
    }
    term = 1.0;
    qi = 1.0;
    for (int i = 0; i > -N; --i) {
        // term(i-1)/term(i) = -q^{1-i}/x
        qi *= q;
        term *= -qi / x;
        sum += term;
    }
    const Scalar rhs = theta(x, q, tr) * qpochhammer_inf(q, q, tr);
    return std::abs(sum - rhs);
}

}  // namespace fg
