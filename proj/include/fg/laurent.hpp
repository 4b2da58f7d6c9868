#pragma once

#include <vector>

#include "fg/core.hpp"

namespace fg {

// Univariate bilateral series: coefficients p_i for i in [-window, window].
struct UnivariateSeries {
    int window = 1;
    std::vector<Scalar> coeffs;  // size 2*window+1, index i stored at i+window

    explicit UnivariateSeries(int w) : window(w), coeffs(2 * w + 1, Scalar(0.0)) {
        if (w < 1) throw std::invalid_argument("window must be >= 1");
    }

    bool in_window(int i) const { return i >= -window && i <= window; }

    Scalar at(int i) const {
        if (!in_window(i)) throw IndexOutOfWindow("univariate index out of window");
        return coeffs[static_cast<size_t>(i + window)];
    }

    void set(int i, Scalar v) {
        if (!in_window(i)) throw IndexOutOfWindow("univariate index out of window");
        coeffs[static_cast<size_t>(i + window)] = v;
    }
};

// Bivariate bilateral series: lambda(i,j) on [-window, window]^2.
struct BilateralSeries2 {
    int window = 1;
    std::vector<Scalar> coeffs;  // row-major, (i,j) at (i+window)*(2w+1)+(j+window)

    explicit BilateralSeries2(int w)
        : window(w),
          coeffs(static_cast<size_t>(2 * w + 1) * (2 * w + 1), Scalar(0.0)) {
        if (w < 1) throw std::invalid_argument("window must be >= 1");
    }

    bool in_window(int i) const { return i >= -window && i <= window; }

    Scalar at(int i, int j) const {
        if (!in_window(i) || !in_window(j))
            throw IndexOutOfWindow("bivariate index out of window");
        const size_t n = static_cast<size_t>(2 * window + 1);
        return coeffs[static_cast<size_t>(i + window) * n +
                      static_cast<size_t>(j + window)];
    }

    void set(int i, int j, Scalar v) {
        if (!in_window(i) || !in_window(j))
            throw IndexOutOfWindow("bivariate index out of window");
        const size_t n = static_cast<size_t>(2 * window + 1);
        coeffs[static_cast<size_t>(i + window) * n +
               static_cast<size_t>(j + window)] = v;
    }

    double max_abs() const {
        double s = 0.0;
        for (const Scalar& c : coeffs) s = std::max(s, std::abs(c));
        return s;
    }
};

struct Pivot {
    int m0 = 1;
    int k0 = 0;
};

// lambda(m,i) lambda(k,j) - lambda(k,i) lambda(m,j) + lambda(k,m) lambda(i,j)
Scalar self_orth_coeff_residual(const BilateralSeries2& s, int m, int i, int j,
                                int k);

// c(m,i) lambda(k,j) - c(m,j) lambda(k,i) + c(i,j) lambda(k,m)
// where c are the coefficients of g and lambda those of f.
Scalar cross_orth_coeff_residual(const BilateralSeries2& g,
                                 const BilateralSeries2& f, int m, int i, int j,
                                 int k);

// c(m0,k0) c(i,j) - c(m0,i) c(k0,j) + c(m0,j) c(k0,i)
Scalar pivot_self_orth_residual(const BilateralSeries2& g, const Pivot& p, int i,
                                int j);

// lambda(i,j) = p_i q_j - p_j q_i  (always self-orthogonal)
BilateralSeries2 construct_self_orthogonal(const UnivariateSeries& P,
                                           const UnivariateSeries& Q);

// lambda(i,j) = (p_i c(m0,j) - q_i c(k0,j)) / c(m0,k0); requires g self-
// orthogonal at the pivot (checked by an exhaustive scan).
BilateralSeries2 construct_orthogonal_to(const BilateralSeries2& g,
                                         const UnivariateSeries& P,
                                         const UnivariateSeries& Q,
                                         const Pivot& p);

// j -> c(m0, j)
UnivariateSeries coeff_slice(const BilateralSeries2& g, int m0);

// Series coefficients of y theta(x y) theta(x/y): the antisymmetrized product
// of the two theta components, with the pivot normalization folded into Q.
BilateralSeries2 theta_pair_series(Scalar q, int window, const Truncation& tr);

// sum over the window of lambda(i,j) x^i y^j
Scalar eval_series(const BilateralSeries2& s, Scalar x, Scalar y);

// Exhaustive scans used by tests and the acceptance suite; each returns the
// max |residual| over all index quadruples (or pairs) in the window.
double scan_self_orth(const BilateralSeries2& s);
double scan_cross_orth(const BilateralSeries2& g, const BilateralSeries2& f);
double scan_pivot(const BilateralSeries2& g, const Pivot& p);

}  // namespace fg
