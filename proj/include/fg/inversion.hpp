#pragma once

#include <functional>
#include <vector>

#include "fg/pairs.hpp"

namespace fg {

// Integer-indexed scalar sequence. Closed-form kinds cover everything the
// verification scenarios need; Table allows arbitrary frozen values.
class IndexedSequence {
public:
    // geometric: scale * ratio^k; affine: offset + slope * k
    static IndexedSequence geometric(Scalar scale, Scalar ratio) {
        IndexedSequence s;
        s.eval_ = [scale, ratio](int k) {
            Scalar p = scale;
            if (k >= 0)
                for (int i = 0; i < k; ++i) p *= ratio;
            else
                for (int i = 0; i < -k; ++i) p /= ratio;
            return p;
        };
        return s;
    }

    static IndexedSequence affine(Scalar offset, Scalar slope) {
        IndexedSequence s;
        s.eval_ = [offset, slope](int k) { return offset + slope * double(k); };
        return s;
    }

    static IndexedSequence constant(Scalar v) {
        IndexedSequence s;
        s.eval_ = [v](int) { return v; };
        return s;
    }

    static IndexedSequence from_function(std::function<Scalar(int)> fn) {
        IndexedSequence s;
        s.eval_ = std::move(fn);
        return s;
    }

    Scalar operator()(int k) const { return eval_(k); }

private:
    std::function<Scalar(int)> eval_;
};

// Dense matrix on inclusive index ranges [row_lo,row_hi] x [col_lo,col_hi].
struct MatrixWindow {
    int row_lo = 0, row_hi = -1, col_lo = 0, col_hi = -1;
    std::vector<Scalar> entries;  // row-major

    MatrixWindow(int rlo, int rhi, int clo, int chi)
        : row_lo(rlo), row_hi(rhi), col_lo(clo), col_hi(chi),
          entries(static_cast<size_t>(rhi - rlo + 1) * (chi - clo + 1),
                  Scalar(0.0)) {}

    int rows() const { return row_hi - row_lo + 1; }
    int cols() const { return col_hi - col_lo + 1; }

    Scalar at(int n, int k) const {
        return entries[static_cast<size_t>(n - row_lo) * cols() + (k - col_lo)];
    }
    void set(int n, int k, Scalar v) {
        entries[static_cast<size_t>(n - row_lo) * cols() + (k - col_lo)] = v;
    }
};

// Lower-triangular inverse pair:
//   F_{n,k} = prod_{i=k}^{n-1} f(x_i, b_k) / prod_{i=k+1}^{n} g(b_i, b_k)
//   G_{n,k} = [f(x_k,b_k)/f(x_n,b_n)]
//             * prod_{i=k+1}^{n} f(x_i, b_n) / prod_{i=k}^{n-1} g(b_i, b_n)
// with zero above the diagonal and ones on it.
MatrixWindow build_F(const FunctionPair& pair, const ParamEnv& env,
                     const IndexedSequence& xs, const IndexedSequence& bs,
                     int lo, int hi);
MatrixWindow build_G(const FunctionPair& pair, const ParamEnv& env,
                     const IndexedSequence& xs, const IndexedSequence& bs,
                     int lo, int hi);

struct InverseCheckResult {
    double max_residual_fg = 0.0;  // max |(FG)_{n,k} - delta| over the window
    double max_residual_gf = 0.0;
    bool pass = false;
};

InverseCheckResult verify_inverse(const MatrixWindow& F, const MatrixWindow& G,
                                  double tol);

// The alternating double-product sum that must vanish identically:
//   sum_{k=-n}^{m} f(a_k,b_k)
//     * [prod_{j=m}^{k-1} g(b_j,b_m) / prod_{j=m}^{k} f(a_j,b_m)]
//     * [prod_{j=1}^{k-1} f(a_j,b_{-n}) / prod_{j=1}^{k} g(b_j,b_{-n})]
Scalar zero_sum_residual(const FunctionPair& pair, const ParamEnv& env,
                         const IndexedSequence& as_, const IndexedSequence& bs,
                         int m, int n);

struct BilateralHResult {
    Scalar value;                   // extrapolated limit
    double last_step_change = 0.0;  // relative change between the last two levels
    double ratio_hypothesis_residual = 0.0;  // forward vs backward product ratio
    bool hypothesis_ok = false;
};

// h(M) as the limit of [prod-ratio(M,N) - prod-ratio'(M,N)] / g(A_M, A_N)
// with A_N = A_M (1 + eps), eps halved over several levels, Richardson-
// extrapolated. Also checks the equal-product-ratio hypothesis at a finite
// separation (N = M is unusable for that check since both ratios are 1).
BilateralHResult bilateral_h(const FunctionPair& pair, const ParamEnv& env,
                             const IndexedSequence& as_, const IndexedSequence& bs,
                             const IndexedSequence& A, int M, const Truncation& tr);

// Bilateral inverse pair entries for the q-lattice configuration
// (a_j = b q^j, b_j = c q^j, A_n = q^{-n}); these are Schlosser's matrices.
std::pair<Scalar, Scalar> schlosser_entries(Scalar a, Scalar b, Scalar c,
                                            Scalar q, int n, int k,
                                            const Truncation& tr);

// Closed form for h(M) in the same configuration. The published display of
// this quantity is misprinted; this is the corrected form, cross-validated
// against both the limit and the bilateral diagonal sum (see tests).
Scalar schlosser_h_closed(Scalar a, Scalar b, Scalar c, Scalar q, int M,
                          const Truncation& tr);

// Independent route to h(M): the diagonal entry of the bilateral product
// P G evaluated as a 2K+1-term sum with terms advanced by exact ratios
// (avoids overflow from huge intermediate one-sided products).
Scalar schlosser_h_diagonal(Scalar a, Scalar b, Scalar c, Scalar q, int M,
                            int K);

// Relative residual of the three-term infinite-product identity behind the
// bilateral inversion (the theta addition formula in product form).
double transformation_521_residual(Scalar a, Scalar b, Scalar c, Scalar d,
                                   Scalar q, const Truncation& tr);

}  // namespace fg
