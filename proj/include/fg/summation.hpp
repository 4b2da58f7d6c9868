#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fg/inversion.hpp"
#include "fg/pairs.hpp"

namespace fg {

// One concrete specialization of the telescoping summation: a pair, four
// sequences, and (optionally) an independently coded closed form.
struct SummationInstance {
    std::string name;
    std::string description;
    FunctionPair pair;
    ParamEnv env;
    IndexedSequence a, b, c, d;
    int m = 6;  // default verification range: k runs over [-n, m]
    int n = 4;

    // Closed-form evaluator for the boundary products, written from the
    // specialized display (never by reusing rhs_products). When present,
    // verify_summation checks rhs_products against it.
    std::function<Scalar(int m, int n)> reference;

    // Fully independent check of the specialized display: evaluates the
    // display's own left and right sides and returns their relative
    // residual. Used where the display's summand differs from the generic
    // machinery by prefactors/normalizations worth testing on their own.
    std::function<double(int m, int n)> display_residual;

    // tolerance override for truncation-limited instances (elliptic)
    std::optional<double> tol_override;
};

// sum_{k=-n}^{m} f(a_k,b_k) g(c_k,d_k)
//   * [prod_{j=1}^{k-1} f(a_j,c_j) / prod_{j=1}^{k} f(a_j,d_j)]
//   * [prod_{j=1}^{k-1} g(b_j,d_j) / prod_{j=1}^{k} g(b_j,c_j)]
Scalar lhs_sum(const SummationInstance& inst, int m, int n);

// the isolated summand at one k (used by the telescoping test)
Scalar summand(const SummationInstance& inst, int k);

// prod_{j=1}^{m} [f(a_j,c_j) g(b_j,d_j) / (f(a_j,d_j) g(b_j,c_j))]
// - prod_{j=-n}^{0} [f(a_j,d_j) g(b_j,c_j) / (f(a_j,c_j) g(b_j,d_j))]
Scalar rhs_products(const SummationInstance& inst, int m, int n);

struct SummationCheck {
    double identity_residual = 0.0;   // lhs vs rhs
    double reference_residual = 0.0;  // rhs vs independent closed form
    double display_residual = 0.0;    // the display's own two sides
    bool pass = false;
};

SummationCheck verify_summation(const SummationInstance& inst, int m, int n,
                                double tol);

// same, at the instance's own (m, n)
SummationCheck verify_summation(const SummationInstance& inst, double tol);

// Specialization with c_j = b_0, d_j = x, n effectively absent: the
// backward boundary product vanishes through g(b_0, b_0) = 0.
SummationInstance unilateral_instance(const FunctionPair& pair,
                                      const ParamEnv& env,
                                      const IndexedSequence& as_,
                                      const IndexedSequence& bs, Scalar x, int m);

// The seventeen named specializations with validated default parameters.
// Overrides are keyed "catalog.<instance>.<param>" and replace the displayed
// parameters (p, q, a, b, d, e, x) of the matching instance; sequence scales
// and ratios are part of the instance definition and stay fixed.
std::vector<SummationInstance> catalog(
    const Truncation& tr,
    const std::map<std::string, double>& overrides = {});

// Negative control: the generic machinery run with a non-orthogonal pair.
SummationInstance broken_instance();

}  // namespace fg
