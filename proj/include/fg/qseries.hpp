#pragma once

#include <functional>

#include "fg/core.hpp"

namespace fg {

// (a;q)_n with the reciprocal extension for n < 0:
//   n >= 0 : prod_{i=0}^{n-1} (1 - a q^i)
//   n <  0 : 1 / prod_{j=1}^{-n} (1 - a q^{-j})
Scalar qpochhammer(Scalar a, Scalar q, int n);

// Truncated (a;q)_inf with a verified tail bound |a q^{N-1}| <= tail_tol.
Scalar qpochhammer_inf(Scalar a, Scalar q, const Truncation& tr);

// Convenience: product of several (a;q)_inf with a shared base.
Scalar qpochhammer_inf_all(std::initializer_list<Scalar> as, Scalar q,
                           const Truncation& tr);

// The three-case product convention:
//   m >= k   : A_k ... A_m
//   m == k-1 : 1
//   m <= k-2 : 1 / (A_{m+1} ... A_{k-1})
Scalar gen_product(const std::function<Scalar(int)>& factor, int k, int m);

// Reciprocal of gen_product, with the m <= k-2 branch evaluated as a direct
// product A_{m+1}...A_{k-1}. This matters: the flipped branch places those
// factors in the numerator, so a zero among them yields an exact 0 instead
// of a division by zero. Telescoping sums over negative k rely on this.
Scalar inv_gen_product(const std::function<Scalar(int)>& factor, int k, int m);

// theta(x) = (x;q)_inf (q/x;q)_inf
Scalar theta(Scalar x, Scalar q, const Truncation& tr);

// | sum_{i=-N}^{N} (-1)^i q^binom(i,2) x^i  -  (x;q)_inf (q/x;q)_inf (q;q)_inf |
double jacobi_triple_residual(Scalar x, Scalar q, const Truncation& tr);

}  // namespace fg
