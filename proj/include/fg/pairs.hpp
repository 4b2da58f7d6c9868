#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fg/core.hpp"

namespace fg {

// Scalar parameter bindings for a pair (a, b, d, q, ...). Evaluation of a
// pair whose param_names are not all bound throws.
class ParamEnv {
public:
    ParamEnv() = default;
    ParamEnv(std::initializer_list<std::pair<const std::string, Scalar>> init)
        : bindings_(init) {}

    void set(const std::string& name, Scalar v) { bindings_[name] = v; }

    Scalar get(const std::string& name) const {
        auto it = bindings_.find(name);
        if (it == bindings_.end())
            throw std::invalid_argument("unbound parameter: " + name);
        return it->second;
    }

    bool has(const std::string& name) const { return bindings_.count(name) != 0; }

private:
    std::map<std::string, Scalar> bindings_;
};

struct FunctionPair {
    std::string name;
    std::string description;
    std::function<Scalar(Scalar, Scalar, const ParamEnv&)> f;
    std::function<Scalar(Scalar, Scalar, const ParamEnv&)> g;
    std::vector<std::string> param_names;
    // true when (x,y) is within distance ~1e-3 of a zero denominator locus
    std::function<bool(Scalar, Scalar, const ParamEnv&)> pole_predicate;
    bool claims_g_antisymmetric = true;
    bool claims_f_self_orthogonal = false;

    ParamEnv default_env;
};

// g(a,b) f(x,c) - g(a,c) f(x,b) + g(b,c) f(x,a)
Scalar orthogonality_residual(const FunctionPair& pair, const ParamEnv& env,
                              Scalar a, Scalar b, Scalar c, Scalar x);

// f(a,c) g(b,d) - g(b,c) f(a,d) - f(a,b) g(c,d)
// (the cross factorization equivalent to orthogonality)
Scalar cross_factorization_residual(const FunctionPair& pair, const ParamEnv& env,
                                    Scalar a, Scalar b, Scalar c, Scalar d);

struct PairCheckResult {
    double max_rel_residual = 0.0;
    double max_abs_residual = 0.0;
    int samples_run = 0;
    int rejections = 0;
    bool pass = false;
};

// Samples (a,b,c,x,d) tuples from the default annulus region, rejecting
// near-pole draws, and evaluates all claimed residuals.
PairCheckResult check_pair(const FunctionPair& pair, const ParamEnv& env,
                           Rng& rng, int samples, double tol);

// The seven built-in pairs: S1..S4 self-orthogonal, C1..C3 cross pairs.
std::vector<FunctionPair> builtin_pairs(const Truncation& tr);

// Deliberately non-orthogonal pair (f = x y^2, g = x - y) used as a negative
// control: every verification layer must reject it.
FunctionPair broken_pair();

}  // namespace fg
