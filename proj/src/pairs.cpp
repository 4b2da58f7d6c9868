#include "fg/pairs.hpp"

#include <cmath>

#include "fg/qseries.hpp"

namespace fg {

Scalar orthogonality_residual(const FunctionPair& pair, const ParamEnv& env,
                              Scalar a, Scalar b, Scalar c, Scalar x) {
    const auto& f = pair.f;
    const auto& g = pair.g;
    return g(a, b, env) * f(x, c, env) - g(a, c, env) * f(x, b, env) +
           g(b, c, env) * f(x, a, env);
}

Scalar cross_factorization_residual(const FunctionPair& pair, const ParamEnv& env,
                                    Scalar a, Scalar b, Scalar c, Scalar d) {
    const auto& f = pair.f;
    const auto& g = pair.g;
    return f(a, c, env) * g(b, d, env) - g(b, c, env) * f(a, d, env) -
           f(a, b, env) * g(c, d, env);
}

namespace {

// Scale for the three-term relation: largest term magnitude, so the check is
// meaningful when the pair values themselves are large or tiny.
double orth_scale(const FunctionPair& pair, const ParamEnv& env, Scalar a,
                  Scalar b, Scalar c, Scalar x) {
    const auto& f = pair.f;
    const auto& g = pair.g;
    double s = std::abs(g(a, b, env) * f(x, c, env));
    s = std::max(s, std::abs(g(a, c, env) * f(x, b, env)));
    s = std::max(s, std::abs(g(b, c, env) * f(x, a, env)));
    return std::max(s, 1e-30);
}

double cross_scale(const FunctionPair& pair, const ParamEnv& env, Scalar a,
                   Scalar b, Scalar c, Scalar d) {
    const auto& f = pair.f;
    const auto& g = pair.g;
    double s = std::abs(f(a, c, env) * g(b, d, env));
    s = std::max(s, std::abs(g(b, c, env) * f(a, d, env)));
    s = std::max(s, std::abs(f(a, b, env) * g(c, d, env)));
    return std::max(s, 1e-30);
}

}  // namespace

PairCheckResult check_pair(const FunctionPair& pair, const ParamEnv& env,
                           Rng& rng, int samples, double tol) {
    PairCheckResult res;
    const int max_attempts = samples * 10;
    int attempts = 0;
    while (res.samples_run < samples && attempts < max_attempts) {
        ++attempts;
        const Scalar a = rng.annulus(0.2, 2.0);
        const Scalar b = rng.annulus(0.2, 2.0);
        const Scalar c = rng.annulus(0.2, 2.0);
        const Scalar x = rng.annulus(0.2, 2.0);
        const Scalar d = rng.annulus(0.2, 2.0);
        bool near_pole = false;
        const Scalar args[5] = {a, b, c, x, d};
        for (const Scalar& u : args)
            for (const Scalar& v : args)
                if (pair.pole_predicate && pair.pole_predicate(u, v, env))
                    near_pole = true;
        if (near_pole) {
            ++res.rejections;
            continue;
        }
        try {
            const Scalar r1 = orthogonality_residual(pair, env, a, b, c, x);
            const double s1 = orth_scale(pair, env, a, b, c, x);
            res.max_rel_residual = std::max(res.max_rel_residual, std::abs(r1) / s1);
            res.max_abs_residual = std::max(res.max_abs_residual, std::abs(r1));

            const Scalar r2 = cross_factorization_residual(pair, env, a, b, c, d);
            const double s2 = cross_scale(pair, env, a, b, c, d);
            res.max_rel_residual = std::max(res.max_rel_residual, std::abs(r2) / s2);
            res.max_abs_residual = std::max(res.max_abs_residual, std::abs(r2));

            if (pair.claims_g_antisymmetric) {
                const Scalar r3 = pair.g(a, b, env) + pair.g(b, a, env);
                const double s3 = std::max(std::abs(pair.g(a, b, env)), 1e-30);
                res.max_rel_residual =
                    std::max(res.max_rel_residual, std::abs(r3) / s3);
                res.max_abs_residual = std::max(res.max_abs_residual, std::abs(r3));
            }
            if (pair.claims_f_self_orthogonal) {
                // run the three-term relation with g := f
                const auto& f = pair.f;
                const Scalar r4 = f(a, b, env) * f(x, c, env) -
                                  f(a, c, env) * f(x, b, env) +
                                  f(b, c, env) * f(x, a, env);
                double s4 = std::abs(f(a, b, env) * f(x, c, env));
                s4 = std::max(s4, std::abs(f(a, c, env) * f(x, b, env)));
                s4 = std::max(s4, std::abs(f(b, c, env) * f(x, a, env)));
                s4 = std::max(s4, 1e-30);
                res.max_rel_residual =
                    std::max(res.max_rel_residual, std::abs(r4) / s4);
                res.max_abs_residual = std::max(res.max_abs_residual, std::abs(r4));
            }
            ++res.samples_run;
        } catch (const EvalError&) {
            ++res.rejections;
        }
    }
    // fail when we could not get enough clean samples
    const bool starved = res.samples_run < samples;
    res.pass = !starved && res.max_rel_residual <= tol;
    return res;
}

namespace {

bool near(Scalar v, double eps = 1e-3) { return std::abs(v) < eps; }

}  // namespace

std::vector<FunctionPair> builtin_pairs(const Truncation& tr) {
    std::vector<FunctionPair> pairs;

    {
        FunctionPair p;
        p.name = "S1";
        p.description = "f = g = x - y";
        p.f = [](Scalar x, Scalar y, const ParamEnv&) { return x - y; };
        p.g = p.f;
        p.claims_f_self_orthogonal = true;
        p.pole_predicate = nullptr;
        pairs.push_back(std::move(p));
    }
    {
        FunctionPair p;
        p.name = "S2";
        p.description = "f = g = (y - x)(1 - x y / d)";
        p.param_names = {"d"};
        p.default_env = ParamEnv{{"d", Scalar(2.0)}};
        p.f = [](Scalar x, Scalar y, const ParamEnv& env) {
            return (y - x) * (1.0 - x * y / env.get("d"));
        };
        p.g = p.f;
        p.claims_f_self_orthogonal = true;
        p.pole_predicate = nullptr;
        pairs.push_back(std::move(p));
    }
    {
        FunctionPair p;
        p.name = "S3";
        p.description = "f = g = (x - y)(1 - b/(a x y))";
        p.param_names = {"a", "b"};
        p.default_env = ParamEnv{{"a", Scalar(0.5)}, {"b", Scalar(0.25)}};
        p.f = [](Scalar x, Scalar y, const ParamEnv& env) {
            return (x - y) * (1.0 - env.get("b") / (env.get("a") * x * y));
        };
        p.g = p.f;
        p.claims_f_self_orthogonal = true;
        p.pole_predicate = [](Scalar x, Scalar y, const ParamEnv&) {
            return near(x) || near(y);
        };
        pairs.push_back(std::move(p));
    }
    {
        FunctionPair p;
        p.name = "S4";
        p.description = "f = g = y theta(x y) theta(x/y), base q";
        p.param_names = {"q"};
        p.default_env = ParamEnv{{"q", Scalar(0.3)}};
        p.f = [tr](Scalar x, Scalar y, const ParamEnv& env) {
            const Scalar q = env.get("q");
            return y * theta(x * y, q, tr) * theta(x / y, q, tr);
        };
        p.g = p.f;
        p.claims_f_self_orthogonal = true;
        p.pole_predicate = [](Scalar x, Scalar y, const ParamEnv&) {
            return near(x) || near(y);
        };
        pairs.push_back(std::move(p));
    }
    {
        FunctionPair p;
        p.name = "C1";
        p.description = "f = P(x) + y Q(x), g = x - y (default P = 1+2x, Q = 3-x)";
        p.f = [](Scalar x, Scalar y, const ParamEnv&) {
            const Scalar P = 1.0 + 2.0 * x;
            const Scalar Q = 3.0 - x;
            return P + y * Q;
        };
        p.g = [](Scalar x, Scalar y, const ParamEnv&) { return x - y; };
        p.pole_predicate = nullptr;
        pairs.push_back(std::move(p));
    }
    {
        FunctionPair p;
        p.name = "C2";
        p.description = "f = (1 - a x y)(1 - b x / y), g = (x - y)(1 - b/(a x y))";
        p.param_names = {"a", "b"};
        p.default_env = ParamEnv{{"a", Scalar(0.5)}, {"b", Scalar(0.25)}};
        p.f = [](Scalar x, Scalar y, const ParamEnv& env) {
            return (1.0 - env.get("a") * x * y) * (1.0 - env.get("b") * x / y);
        };
        p.g = [](Scalar x, Scalar y, const ParamEnv& env) {
            return (x - y) * (1.0 - env.get("b") / (env.get("a") * x * y));
        };
        p.pole_predicate = [](Scalar x, Scalar y, const ParamEnv&) {
            return near(x) || near(y);
        };
        pairs.push_back(std::move(p));
    }
    {
        FunctionPair p;
        p.name = "C3";
        p.description = "f = (x + y)(x + b/(a y)), g = (x - y)(1 - b/(a x y))";
        p.param_names = {"a", "b"};
        p.default_env = ParamEnv{{"a", Scalar(0.5)}, {"b", Scalar(0.25)}};
        p.f = [](Scalar x, Scalar y, const ParamEnv& env) {
            return (x + y) * (x + env.get("b") / (env.get("a") * y));
        };
        p.g = [](Scalar x, Scalar y, const ParamEnv& env) {
            return (x - y) * (1.0 - env.get("b") / (env.get("a") * x * y));
        };
        p.pole_predicate = [](Scalar x, Scalar y, const ParamEnv&) {
            return near(x) || near(y);
        };
        pairs.push_back(std::move(p));
    }
    return pairs;
}

FunctionPair broken_pair() {
    FunctionPair p;
    p.name = "broken";
    p.description = "f = x y^2, g = x - y (intentionally not orthogonal)";
    p.f = [](Scalar x, Scalar y, const ParamEnv&) { return x * y * y; };
    p.g = [](Scalar x, Scalar y, const ParamEnv&) { return x - y; };
    p.pole_predicate = nullptr;
    return p;
}

}  // namespace fg
