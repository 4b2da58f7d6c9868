#include "fg/summation.hpp"

#include <cmath>

#include "fg/qseries.hpp"

namespace fg {

Scalar summand(const SummationInstance& inst, int k) {
    const auto& f = inst.pair.f;
    const auto& g = inst.pair.g;
    const ParamEnv& env = inst.env;
    const auto& a = inst.a;
    const auto& b = inst.b;
    const auto& c = inst.c;
    const auto& d = inst.d;
    Scalar t = f(a(k), b(k), env) * g(c(k), d(k), env);
    t *= gen_product([&](int j) { return f(a(j), c(j), env); }, 1, k - 1);
    t *= inv_gen_product([&](int j) { return f(a(j), d(j), env); }, 1, k);
    t *= gen_product([&](int j) { return g(b(j), d(j), env); }, 1, k - 1);
    t *= inv_gen_product([&](int j) { return g(b(j), c(j), env); }, 1, k);
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
        throw PoleError("non-finite summand at k=" + std::to_string(k));
    return t;
}

Scalar lhs_sum(const SummationInstance& inst, int m, int n) {
    Scalar s = 0.0;
    for (int k = -n; k <= m; ++k) s += summand(inst, k);
    return s;
}

Scalar rhs_products(const SummationInstance& inst, int m, int n) {
    const auto& f = inst.pair.f;
    const auto& g = inst.pair.g;
    const ParamEnv& env = inst.env;
    const auto& a = inst.a;
    const auto& b = inst.b;
    const auto& c = inst.c;
    const auto& d = inst.d;
    const Scalar t1 = gen_product(
        [&](int j) {
            return f(a(j), c(j), env) * g(b(j), d(j), env) /
                   (f(a(j), d(j), env) * g(b(j), c(j), env));
        },
        1, m);
    // range -n..0 is always a direct product (n >= 0), so a vanishing
    // g(b_j, c_j) factor correctly zeroes the whole backward term
    const Scalar t2 = gen_product(
        [&](int j) {
            return f(a(j), d(j), env) * g(b(j), c(j), env) /
                   (f(a(j), c(j), env) * g(b(j), d(j), env));
        },
        -n, 0);
    const Scalar r = t1 - t2;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw PoleError("non-finite boundary product");
    return r;
}

SummationCheck verify_summation(const SummationInstance& inst, int m, int n,
                                double tol) {
    SummationCheck res;
    const Scalar L = lhs_sum(inst, m, n);
    const Scalar R = rhs_products(inst, m, n);
    const double scale = std::max({std::abs(L), std::abs(R), 1e-30});
    res.identity_residual = std::abs(L - R) / scale;
    if (inst.reference) {
        const Scalar Rf = inst.reference(m, n);
        res.reference_residual =
            std::abs(R - Rf) / std::max({std::abs(R), std::abs(Rf), 1e-30});
    }
    if (inst.display_residual) res.display_residual = inst.display_residual(m, n);
    const double eff_tol = inst.tol_override.value_or(tol);
    res.pass = res.identity_residual <= eff_tol &&
               res.reference_residual <= eff_tol &&
               res.display_residual <= eff_tol;
    return res;
}

SummationCheck verify_summation(const SummationInstance& inst, double tol) {
    return verify_summation(inst, inst.m, inst.n, tol);
}

SummationInstance unilateral_instance(const FunctionPair& pair,
                                      const ParamEnv& env,
                                      const IndexedSequence& as_,
                                      const IndexedSequence& bs, Scalar x,
                                      int m) {
    SummationInstance inst;
    inst.name = "unilateral(" + pair.name + ")";
    inst.description = "c_j = b_0, d_j = x specialization of " + pair.name;
    inst.pair = pair;
    inst.env = env;
    inst.a = as_;
    inst.b = bs;
    inst.c = IndexedSequence::constant(bs(0));
    inst.d = IndexedSequence::constant(x);
    inst.m = m;
    inst.n = 0;
    const FunctionPair p = pair;  // copy for capture lifetime
    const Scalar b0 = bs(0);
    const IndexedSequence aa = as_, bb = bs;
    inst.reference = [p, env, aa, bb, b0, x](int mm, int) {
        return gen_product(
            [&](int j) {
                return p.f(aa(j), b0, env) * p.g(bb(j), x, env) /
                       (p.f(aa(j), x, env) * p.g(bb(j), b0, env));
            },
            1, mm);
    };
    // fail fast on degenerate parameter choices
    (void)lhs_sum(inst, m, 0);
    return inst;
}

SummationInstance broken_instance() {
    SummationInstance inst;
    inst.name = "broken";
    inst.description = "non-orthogonal pair; the identity must fail";
    inst.pair = broken_pair();
    inst.a = IndexedSequence::geometric(1.5, 1.1);
    inst.b = IndexedSequence::affine(2.0, 0.31);
    inst.c = IndexedSequence::geometric(0.4, 1.2);
    inst.d = IndexedSequence::affine(-1.3, 0.27);
    return inst;
}

namespace {

FunctionPair find_pair(const std::vector<FunctionPair>& ps,
                       const std::string& name) {
    for (const auto& p : ps)
        if (p.name == name) return p;
    throw std::logic_error("missing builtin pair " + name);
}

Scalar gp(const std::function<Scalar(int)>& fac, int k, int m) {
    return gen_product(fac, k, m);
}

// independently coded q-Pochhammer for the reference forms (kept separate
// from fg::qpochhammer on purpose: the references must not share code with
// the machinery they check)
Scalar refpoch(Scalar a, Scalar q, int n) {
    if (n >= 0) {
        Scalar p = 1.0;
        Scalar aq = a;
        for (int i = 0; i < n; ++i) {
            p *= 1.0 - aq;
            aq *= q;
        }
        return p;
    }
    Scalar p = 1.0;
    Scalar aq = a;
    for (int j = 1; j <= -n; ++j) {
        aq /= q;
        p *= 1.0 - aq;
    }
    return 1.0 / p;
}

double rel(Scalar u, Scalar v) {
    return std::abs(u - v) / std::max({std::abs(u), std::abs(v), 1e-30});
}

FunctionPair one_pair() {
    FunctionPair p;
    p.name = "one";
    p.description = "f = 1, g = x - y";
    p.f = [](Scalar, Scalar, const ParamEnv&) { return Scalar(1.0); };
    p.g = [](Scalar x, Scalar y, const ParamEnv&) { return x - y; };
    p.pole_predicate = nullptr;
    return p;
}

FunctionPair gosper_pair() {
    FunctionPair p;
    p.name = "gosper";
    p.description = "f = 1 - a u v, g = u - v";
    p.param_names = {"a"};
    p.f = [](Scalar u, Scalar v, const ParamEnv& env) {
        return 1.0 - env.get("a") * u * v;
    };
    p.g = [](Scalar u, Scalar v, const ParamEnv&) { return u - v; };
    p.pole_predicate = nullptr;
    return p;
}

FunctionPair macdonald_pair() {
    FunctionPair p;
    p.name = "macdonald";
    p.description = "f = (1 - x y)(1 - x/y), g = (x - y)(1 - 1/(x y))";
    p.f = [](Scalar x, Scalar y, const ParamEnv&) {
        return (1.0 - x * y) * (1.0 - x / y);
    };
    p.g = [](Scalar x, Scalar y, const ParamEnv&) {
        return (x - y) * (1.0 - 1.0 / (x * y));
    };
    p.pole_predicate = [](Scalar x, Scalar y, const ParamEnv&) {
        return std::abs(x) < 1e-3 || std::abs(y) < 1e-3;
    };
    return p;
}

}  // namespace

std::vector<SummationInstance> catalog(
    const Truncation& tr, const std::map<std::string, double>& overrides) {
    std::vector<SummationInstance> out;
    const auto builtins = builtin_pairs(tr);
    auto ov = [&overrides](const std::string& inst, const std::string& param,
                           double dflt) {
        const auto it = overrides.find("catalog." + inst + "." + param);
        return it == overrides.end() ? dflt : it->second;
    };

    // (I) trivial-f pair: the summand telescopes through g alone
    {
        SummationInstance inst;
        inst.name = "one_xy";
        inst.description = "pair (1, x-y) with generic sequences";
        inst.pair = one_pair();
        inst.a = IndexedSequence::geometric(1.5, 1.1);
        inst.b = IndexedSequence::affine(2.0, 0.31);
        inst.c = IndexedSequence::geometric(0.4, 1.2);
        inst.d = IndexedSequence::affine(-1.3, 0.27);
        auto bk = [](int k) { return 2.0 + 0.31 * k; };
        auto ck = [](int k) { return 0.4 * std::pow(1.2, k); };
        auto dk = [](int k) { return -1.3 + 0.27 * k; };
        inst.reference = [bk, ck, dk](int m, int n) {
            auto fac = [&](int j) {
                return Scalar((bk(j) - dk(j)) / (bk(j) - ck(j)));
            };
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        out.push_back(std::move(inst));
    }

    // (I.a) Subbarao-Verma three-base form, materialized through its proof
    // substitutions b_k = t_k, c_k = (t_k-1)/(1-y_k), d_k = (t_k-1)/(1-u_k)
    {
        SummationInstance inst;
        inst.name = "subbarao_verma_31";
        inst.description = "three-base summation (pair (1, x-y))";
        inst.pair = one_pair();
        const double av = ov("subbarao_verma_31", "a", 0.6);
        auto xk = [](int k) { return 0.3 * std::pow(0.9, k); };
        auto yk = [](int k) { return 0.2 * std::pow(0.85, k); };
        auto zk = [](int k) { return 1.45 * std::pow(1.17, k); };
        auto uk = [av, zk](int k) { return av * zk(k); };
        auto tk = [xk, uk](int k) { return xk(k) / uk(k); };
        inst.a = IndexedSequence::geometric(1.5, 1.1);
        inst.b = IndexedSequence::from_function([tk](int k) { return Scalar(tk(k)); });
        inst.c = IndexedSequence::from_function(
            [tk, yk](int k) { return Scalar((tk(k) - 1.0) / (1.0 - yk(k))); });
        inst.d = IndexedSequence::from_function(
            [tk, uk](int k) { return Scalar((tk(k) - 1.0) / (1.0 - uk(k))); });
        auto fac = [av, xk, yk, zk](int j) {
            return Scalar((1.0 - xk(j)) * (1.0 - yk(j)) /
                          ((1.0 - av * zk(j)) *
                           (1.0 - xk(j) * yk(j) / (av * zk(j)))));
        };
        inst.reference = [fac](int m, int n) {
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        // the display's own summand, with its u_k(1 - x_k/u_k)(1 - y_k/u_k)
        // prefactor, against the product difference
        inst.display_residual = [av, xk, yk, zk, uk, fac](int m, int n) {
            Scalar s = 0.0;
            for (int k = -n; k <= m; ++k) {
                Scalar t = uk(k) * (1.0 - xk(k) / uk(k)) * (1.0 - yk(k) / uk(k));
                t *= gp([&](int j) { return Scalar((1.0 - xk(j)) * (1.0 - yk(j))); },
                        1, k - 1);
                t /= gp(
                    [&](int j) {
                        return Scalar((1.0 - av * zk(j)) *
                                      (1.0 - xk(j) * yk(j) / (av * zk(j))));
                    },
                    1, k);
                s += t;
            }
            const Scalar rhs =
                gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
            return rel(s, rhs);
        };
        out.push_back(std::move(inst));
    }

    // (II) both slots x - y
    {
        SummationInstance inst;
        inst.name = "xy_xy";
        inst.description = "pair S1 in both slots, generic sequences";
        inst.pair = find_pair(builtins, "S1");
        inst.a = IndexedSequence::geometric(1.5, 1.1);
        inst.b = IndexedSequence::affine(2.0, 0.31);
        inst.c = IndexedSequence::geometric(0.4, 1.2);
        inst.d = IndexedSequence::affine(-1.3, 0.27);
        auto ak = [](int k) { return 1.5 * std::pow(1.1, k); };
        auto bk = [](int k) { return 2.0 + 0.31 * k; };
        auto ck = [](int k) { return 0.4 * std::pow(1.2, k); };
        auto dk = [](int k) { return -1.3 + 0.27 * k; };
        inst.reference = [ak, bk, ck, dk](int m, int n) {
            auto fac = [&](int j) {
                return Scalar((ak(j) - ck(j)) * (bk(j) - dk(j)) /
                              ((ak(j) - dk(j)) * (bk(j) - ck(j))));
            };
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        out.push_back(std::move(inst));
    }

    // (II.a) four independent bases u, v, w, z
    {
        SummationInstance inst;
        inst.name = "subbarao_verma_21";
        inst.description = "four-base summation (pair S1)";
        inst.pair = find_pair(builtins, "S1");
        auto uu = [](int k) { return 0.23 * std::pow(1.06, k); };
        auto vv = [](int k) { return 0.47 * std::pow(0.93, k); };
        auto ww = [](int k) { return 0.36 * std::pow(1.04, k); };
        auto zz = [](int k) { return 0.66 * std::pow(0.96, k); };
        auto A1 = [uu, vv](int k) {
            const double u = uu(k), v = vv(k);
            return (u * u + v * v) / (1.0 + u * u * v * v);
        };
        auto A2 = [uu, vv](int k) {
            const double u = uu(k), v = vv(k);
            return u * v / (1.0 + u * u * v * v);
        };
        auto B1 = [ww, zz](int k) {
            const double w = ww(k), z = zz(k);
            return (w * w + z * z) / (1.0 + w * w * z * z);
        };
        auto B2 = [ww, zz](int k) {
            const double w = ww(k), z = zz(k);
            return w * z / (1.0 + w * w * z * z);
        };
        inst.a = IndexedSequence::from_function([A2](int k) { return Scalar(1.0 / A2(k)); });
        inst.b = IndexedSequence::from_function([B2](int k) { return Scalar(1.0 / B2(k)); });
        inst.c = IndexedSequence::from_function([A1, A2](int k) { return Scalar(A1(k) / A2(k)); });
        inst.d = IndexedSequence::from_function([B1, B2](int k) { return Scalar(B1(k) / B2(k)); });
        auto fac = [uu, vv, ww, zz](int j) {
            const double u = uu(j), v = vv(j), w = ww(j), z = zz(j);
            return Scalar((1.0 - u * u) * (1.0 - v * v) * (1.0 - w * w) *
                          (1.0 - z * z) /
                          ((1.0 - u * v * w / z) * (1.0 - u * v * z / w) *
                           (1.0 - w * z * u / v) * (1.0 - w * z * v / u)));
        };
        inst.reference = [fac](int m, int n) {
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        inst.display_residual = [uu, vv, ww, zz, fac](int m, int n) {
            Scalar s = 0.0;
            for (int k = -n; k <= m; ++k) {
                const double u = uu(k), v = vv(k), w = ww(k), z = zz(k);
                Scalar t = (u * v * w / z) * (1.0 - u * v * w * z) *
                           (1.0 - w * z / (u * v)) * (1.0 - u * z / (v * w)) *
                           (1.0 - v * z / (u * w));
                t *= gp(
                    [&](int j) {
                        return Scalar((1.0 - uu(j) * uu(j)) * (1.0 - vv(j) * vv(j)) *
                                      (1.0 - ww(j) * ww(j)) * (1.0 - zz(j) * zz(j)));
                    },
                    1, k - 1);
                t /= gp(
                    [&](int j) {
                        return Scalar(
                            (1.0 - uu(j) * vv(j) * ww(j) / zz(j)) *
                            (1.0 - uu(j) * vv(j) * zz(j) / ww(j)) *
                            (1.0 - ww(j) * zz(j) * uu(j) / vv(j)) *
                            (1.0 - ww(j) * zz(j) * vv(j) / uu(j)));
                    },
                    1, k);
                s += t;
            }
            const Scalar rhs =
                gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
            return rel(s, rhs);
        };
        out.push_back(std::move(inst));
    }

    // (II.b) the intermediate A1/A2/B1/B2 form
    {
        SummationInstance inst;
        inst.name = "ab_form";
        inst.description = "A/B substitution form (pair S1)";
        inst.pair = find_pair(builtins, "S1");
        auto gA1 = [](int k) { return 0.5 * std::pow(1.07, k); };
        auto gA2 = [](int k) { return 1.8 * std::pow(0.93, k); };
        auto gB1 = [](int k) { return 0.3 * std::pow(0.9, k); };
        auto gB2 = [](int k) { return 2.6 * std::pow(1.08, k); };
        inst.a = IndexedSequence::from_function([gA2](int k) { return Scalar(1.0 / gA2(k)); });
        inst.b = IndexedSequence::from_function([gB2](int k) { return Scalar(1.0 / gB2(k)); });
        inst.c = IndexedSequence::from_function([gA1, gA2](int k) { return Scalar(gA1(k) / gA2(k)); });
        inst.d = IndexedSequence::from_function([gB1, gB2](int k) { return Scalar(gB1(k) / gB2(k)); });
        inst.reference = [gA1, gA2, gB1, gB2](int m, int n) {
            auto fac = [&](int j) {
                return Scalar((1.0 - gA1(j)) * (1.0 - gB1(j)) /
                              ((1.0 - gA2(j) * gB1(j) / gB2(j)) *
                               (1.0 - gB2(j) * gA1(j) / gA2(j))));
            };
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        out.push_back(std::move(inst));
    }

    // (II.c) Krattenthaler-Chu unilateral form: c_j = 1 makes the backward
    // boundary term vanish identically (g(B_0, 1) = 0), so the reference is
    // a single forward product for every n
    {
        SummationInstance inst;
        inst.name = "krattenthaler_chu";
        inst.description = "matrix-inversion summation (pair S1, unilateral)";
        inst.pair = find_pair(builtins, "S1");
        auto ka = [](int k) { return 0.45 * std::pow(1.13, k); };
        auto kb = [](int k) { return 0.8 * std::pow(1.09, k); };
        const double kb0 = 0.8;
        const double kx = ov("krattenthaler_chu", "x", 1.37);
        inst.a = IndexedSequence::from_function([ka](int k) { return Scalar(ka(k)); });
        inst.b = IndexedSequence::from_function(
            [kb, kb0](int k) { return Scalar(kb0 / kb(k)); });
        inst.c = IndexedSequence::constant(1.0);
        inst.d = IndexedSequence::constant(kx);
        inst.reference = [ka, kb, kb0, kx](int m, int) {
            return gp(
                [&](int j) {
                    return Scalar((1.0 - ka(j)) * (kb0 - kb(j) * kx) /
                                  ((1.0 - ka(j) / kx) * (kb0 - kb(j))) / kx);
                },
                1, m);
        };
        out.push_back(std::move(inst));
    }

    // (II.d) the phi/psi formulation with four auxiliary sequences
    {
        SummationInstance inst;
        inst.name = "chu_theorem_A";
        inst.description = "phi/psi bibasic formulation (pair S1)";
        inst.pair = find_pair(builtins, "S1");
        auto ca = [](int k) { return 1.2 * std::pow(1.06, k); };
        auto cb = [](int k) { return 0.7 * std::pow(0.95, k); };
        auto cc = [](int k) { return -0.8 * std::pow(1.04, k); };
        auto cd = [](int k) { return 1.5 * std::pow(0.97, k); };
        const double cx = ov("chu_theorem_A", "x", 0.9);
        const double cy = ov("chu_theorem_A", "y", -1.4);
        inst.a = IndexedSequence::from_function(
            [ca, cb](int k) { return Scalar(ca(k - 1) / cb(k - 1)); });
        inst.b = IndexedSequence::from_function(
            [cc, cd](int k) { return Scalar(cc(k - 1) / cd(k - 1)); });
        inst.c = IndexedSequence::constant(-cx);
        inst.d = IndexedSequence::constant(-cy);
        auto Phi = [ca, cb](double x, int k) {
            return gp([&](int i) { return Scalar(ca(i) + x * cb(i)); }, 0, k - 1);
        };
        auto Psi = [cc, cd](double y, int k) {
            return gp([&](int i) { return Scalar(cc(i) + y * cd(i)); }, 0, k - 1);
        };
        inst.reference = [Phi, Psi, cx, cy](int m, int n) {
            const Scalar t1 =
                Phi(cx, m) * Psi(cy, m) / (Phi(cy, m) * Psi(cx, m));
            const Scalar t2 = Phi(cx, -n - 1) * Psi(cy, -n - 1) /
                              (Phi(cy, -n - 1) * Psi(cx, -n - 1));
            return t1 - t2;
        };
        // the display's own (x - y) * sum over [md, nd], exercised with
        // md = -n so negative starting points are covered too
        inst.display_residual = [ca, cb, cc, cd, Phi, Psi, cx, cy](int m, int n) {
            const int md = -n, nd = m;
            Scalar s = 0.0;
            for (int k = md; k <= nd; ++k)
                s += (ca(k) * cd(k) - cb(k) * cc(k)) * Phi(cx, k) * Psi(cy, k) /
                     (Phi(cy, k + 1) * Psi(cx, k + 1));
            s *= (cx - cy);
            const Scalar rhs =
                Phi(cx, md) * Psi(cy, md) / (Phi(cy, md) * Psi(cx, md)) -
                Phi(cx, nd + 1) * Psi(cy, nd + 1) /
                    (Phi(cy, nd + 1) * Psi(cx, nd + 1));
            return rel(s, rhs);
        };
        out.push_back(std::move(inst));
    }

    // (III) pair C2 with generic sequences
    {
        SummationInstance inst;
        inst.name = "pair_C2";
        inst.description = "pair C2 with generic sequences";
        inst.pair = find_pair(builtins, "C2");
        const double pa = ov("pair_C2", "a", 0.5), pb = ov("pair_C2", "b", 0.25);
        inst.env = ParamEnv{{"a", Scalar(pa)}, {"b", Scalar(pb)}};
        inst.a = IndexedSequence::geometric(1.5, 1.1);
        inst.b = IndexedSequence::geometric(0.7, 0.93);
        inst.c = IndexedSequence::geometric(0.4, 1.2);
        inst.d = IndexedSequence::geometric(1.9, 0.88);
        auto ak = [](int k) { return 1.5 * std::pow(1.1, k); };
        auto bk = [](int k) { return 0.7 * std::pow(0.93, k); };
        auto ck = [](int k) { return 0.4 * std::pow(1.2, k); };
        auto dk = [](int k) { return 1.9 * std::pow(0.88, k); };
        inst.reference = [pa, pb, ak, bk, ck, dk](int m, int n) {
            auto fac = [&](int j) {
                const double aj = ak(j), bj = bk(j), cj = ck(j), dj = dk(j);
                return Scalar((1.0 - pa * aj * cj) * (1.0 - pb * aj / cj) *
                              (bj - dj) * (1.0 - pb / (pa * bj * dj)) /
                              ((1.0 - pa * aj * dj) * (1.0 - pb * aj / dj) *
                               (bj - cj) * (1.0 - pb / (pa * bj * cj))));
            };
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        out.push_back(std::move(inst));
    }

    // (III.a) the bibasic a_k = p^k, b_k = d q^k specialization; its display
    // carries a normalizing prefactor, checked self-contained
    {
        SummationInstance inst;
        inst.name = "gasper_rahman";
        inst.description = "indefinite bibasic summation (pair C2)";
        inst.pair = find_pair(builtins, "C2");
        const double a = ov("gasper_rahman", "a", 0.6), b = ov("gasper_rahman", "b", 0.15);
        const double d = ov("gasper_rahman", "d", 1.7), x = ov("gasper_rahman", "x", 1.3);
        const double p = ov("gasper_rahman", "p", 0.35), q = ov("gasper_rahman", "q", 0.45);
        inst.env = ParamEnv{{"a", Scalar(a)}, {"b", Scalar(b)}};
        inst.a = IndexedSequence::geometric(1.0, p);
        inst.b = IndexedSequence::geometric(d, q);
        inst.c = IndexedSequence::constant(1.0);
        inst.d = IndexedSequence::constant(d / x);
        inst.display_residual = [a, b, d, x, p, q](int m, int n) {
            Scalar s = 0.0;
            for (int k = -n; k <= m; ++k) {
                const double pk = std::pow(p, k), qk = std::pow(q, k);
                Scalar t = (1.0 - a * d * pk * qk) * (1.0 - (b / d) * pk / qk) /
                           ((1.0 - a * d) * (1.0 - b / d));
                t *= refpoch(a, p, k) * refpoch(b, p, k) * refpoch(x, q, k) *
                     refpoch(a * d * d / (b * x), q, k);
                t /= refpoch(d * q, q, k) * refpoch(a * d * q / b, q, k) *
                     refpoch(a * d * p / x, p, k) * refpoch(b * p * x / d, p, k);
                t *= qk;
                s += t;
            }
            const Scalar pre = (1.0 - a) * (1.0 - b) * (1.0 - x) *
                               (1.0 - a * d * d / (b * x)) /
                               ((1.0 - a * d) * (1.0 - b / d) * (d - x) *
                                (1.0 - a * d / (b * x)));
            const Scalar t1 =
                refpoch(a * p, p, m) * refpoch(b * p, p, m) *
                refpoch(x * q, q, m) * refpoch(a * d * d * q / (b * x), q, m) /
                (refpoch(d * q, q, m) * refpoch(a * d * q / b, q, m) *
                 refpoch(a * d * p / x, p, m) * refpoch(b * p * x / d, p, m));
            const Scalar t2 =
                refpoch(x / (a * d), p, n + 1) * refpoch(d / (b * x), p, n + 1) *
                refpoch(1.0 / d, q, n + 1) * refpoch(b / (a * d), q, n + 1) /
                (refpoch(1.0 / x, q, n + 1) *
                 refpoch(b * x / (a * d * d), q, n + 1) *
                 refpoch(1.0 / a, p, n + 1) * refpoch(1.0 / b, p, n + 1));
            return rel(s, pre * (t1 - t2));
        };
        out.push_back(std::move(inst));
    }

    // (III.b) the f = 1 - a u v unilateral special case
    {
        SummationInstance inst;
        inst.name = "gosper";
        inst.description = "bibasic summation with f = 1 - a u v (unilateral)";
        inst.pair = gosper_pair();
        const double a = ov("gosper", "a", 0.6), p = ov("gosper", "p", 0.35);
        const double q = ov("gosper", "q", 0.45), x = ov("gosper", "x", 1.3);
        inst.env = ParamEnv{{"a", Scalar(a)}};
        inst.a = IndexedSequence::geometric(1.0, p);
        inst.b = IndexedSequence::geometric(1.0, q);
        inst.c = IndexedSequence::constant(1.0);
        inst.d = IndexedSequence::constant(x);
        inst.reference = [a, p, q, x](int m, int) {
            return refpoch(a * p, p, m) * refpoch(q / x, q, m) *
                   std::pow(Scalar(x), m) /
                   (refpoch(q, q, m) * refpoch(a * p * x, p, m));
        };
        out.push_back(std::move(inst));
    }

    // (III.c) the two-parameter reduction with d_k = 1/x
    {
        SummationInstance inst;
        inst.name = "gasper";
        inst.description = "bibasic summation, d = 1 reduction (pair C2)";
        inst.pair = find_pair(builtins, "C2");
        const double a = ov("gasper", "a", 0.6), b = ov("gasper", "b", 0.15);
        const double p = ov("gasper", "p", 0.35), q = ov("gasper", "q", 0.45);
        const double x = ov("gasper", "x", 1.3);
        inst.env = ParamEnv{{"a", Scalar(a)}, {"b", Scalar(b)}};
        inst.a = IndexedSequence::geometric(1.0, p);
        inst.b = IndexedSequence::geometric(1.0, q);
        inst.c = IndexedSequence::constant(1.0);
        inst.d = IndexedSequence::constant(1.0 / x);
        inst.reference = [a, b, p, q, x](int m, int) {
            return refpoch(a * p, p, m) * refpoch(b * p, p, m) *
                   refpoch(x * q, q, m) * refpoch(a * q / (b * x), q, m) /
                   (refpoch(q, q, m) * refpoch(a * q / b, q, m) *
                    refpoch(a * p / x, p, m) * refpoch(b * p * x, p, m));
        };
        out.push_back(std::move(inst));
    }

    // (IV) pair C3 with generic sequences
    {
        SummationInstance inst;
        inst.name = "pair_C3";
        inst.description = "pair C3 with generic sequences";
        inst.pair = find_pair(builtins, "C3");
        const double pa = ov("pair_C3", "a", 0.5), pb = ov("pair_C3", "b", 0.25);
        inst.env = ParamEnv{{"a", Scalar(pa)}, {"b", Scalar(pb)}};
        inst.a = IndexedSequence::geometric(1.5, 1.1);
        inst.b = IndexedSequence::geometric(0.7, 0.93);
        inst.c = IndexedSequence::geometric(0.4, 1.2);
        inst.d = IndexedSequence::geometric(1.9, 0.88);
        auto ak = [](int k) { return 1.5 * std::pow(1.1, k); };
        auto bk = [](int k) { return 0.7 * std::pow(0.93, k); };
        auto ck = [](int k) { return 0.4 * std::pow(1.2, k); };
        auto dk = [](int k) { return 1.9 * std::pow(0.88, k); };
        inst.reference = [pa, pb, ak, bk, ck, dk](int m, int n) {
            auto fac = [&](int j) {
                const double aj = ak(j), bj = bk(j), cj = ck(j), dj = dk(j);
                return Scalar((aj + cj) * (aj + pb / (pa * cj)) * (bj - dj) *
                              (1.0 - pb / (pa * bj * dj)) /
                              ((aj + dj) * (aj + pb / (pa * dj)) * (bj - cj) *
                               (1.0 - pb / (pa * bj * cj))));
            };
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        out.push_back(std::move(inst));
    }

    // (V) pair S2 with generic sequences
    {
        SummationInstance inst;
        inst.name = "pair_S2";
        inst.description = "pair S2 with generic sequences";
        inst.pair = find_pair(builtins, "S2");
        const double dd = ov("pair_S2", "d", 2.0);
        inst.env = ParamEnv{{"d", Scalar(dd)}};
        inst.a = IndexedSequence::geometric(1.5, 1.1);
        inst.b = IndexedSequence::geometric(0.7, 0.93);
        inst.c = IndexedSequence::geometric(0.4, 1.2);
        inst.d = IndexedSequence::geometric(1.9, 0.88);
        auto ak = [](int k) { return 1.5 * std::pow(1.1, k); };
        auto bk = [](int k) { return 0.7 * std::pow(0.93, k); };
        auto ck = [](int k) { return 0.4 * std::pow(1.2, k); };
        auto dk = [](int k) { return 1.9 * std::pow(0.88, k); };
        inst.reference = [dd, ak, bk, ck, dk](int m, int n) {
            auto fac = [&](int j) {
                const double aj = ak(j), bj = bk(j), cj = ck(j), dj = dk(j);
                return Scalar((cj - aj) * (1.0 - aj * cj / dd) * (dj - bj) *
                              (1.0 - bj * dj / dd) /
                              ((dj - aj) * (1.0 - aj * dj / dd) * (cj - bj) *
                               (1.0 - bj * cj / dd)));
            };
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        out.push_back(std::move(inst));
    }

    // (V.a) the S2 unilateral form with rescaled b-sequence (B_0 = d)
    {
        SummationInstance inst;
        inst.name = "chu_gasper_rahman";
        inst.description = "quadratic-base summation (pair S2, unilateral)";
        inst.pair = find_pair(builtins, "S2");
        const double dd = ov("chu_gasper_rahman", "d", 2.0);
        const double hx = ov("chu_gasper_rahman", "x", 1.37), hb0 = 0.8;
        inst.env = ParamEnv{{"d", Scalar(dd)}};
        auto ha = [](int k) { return 0.45 * std::pow(1.13, k); };
        auto hb = [](int k) { return 0.8 * std::pow(1.09, k); };
        inst.a = IndexedSequence::from_function([ha](int k) { return Scalar(ha(k)); });
        inst.b = IndexedSequence::from_function(
            [hb, dd, hb0](int k) { return Scalar(hb(k) * dd / hb0); });
        inst.c = IndexedSequence::constant(1.0);
        inst.d = IndexedSequence::constant(hx);
        auto prods = [ha, hb, dd, hx, hb0](int m) {
            return gp(
                [&](int j) {
                    return Scalar(
                        (1.0 - ha(j)) * (1.0 - ha(j) / dd) *
                        (hb0 - hb(j) * hx) * (hb0 - hb(j) * dd / hx) /
                        ((hb0 - hb(j)) * (hb0 - hb(j) * dd) *
                         (1.0 - ha(j) / hx) * (1.0 - ha(j) * hx / dd)));
                },
                1, m);
        };
        inst.reference = [prods](int m, int) { return prods(m); };
        inst.display_residual = [ha, hb, dd, hx, hb0, prods](int m, int) {
            Scalar s = 0.0;
            for (int k = 0; k <= m; ++k) {
                Scalar t = (hb0 - ha(k) * hb(k)) * (hb(k) - ha(k) * hb0 / dd);
                t *= gp(
                    [&](int j) {
                        return Scalar((1.0 - ha(j)) * (1.0 - ha(j) / dd) *
                                      (hb0 - hb(j) * hx) *
                                      (hb0 - hb(j) * dd / hx));
                    },
                    1, k - 1);
                t /= gp(
                    [&](int j) {
                        return Scalar((hb0 - hb(j)) * (hb0 - hb(j) * dd) *
                                      (1.0 - ha(j) / hx) *
                                      (1.0 - ha(j) * hx / dd));
                    },
                    1, k);
                s += t;
            }
            const Scalar rhs = hx / ((dd - hx) * (hx - 1.0)) * prods(m);
            return rel(s, rhs);
        };
        out.push_back(std::move(inst));
    }

    // (V.b) the b_i -> d e b_i substitution; bilateral (B_0 != 1)
    {
        SummationInstance inst;
        inst.name = "macdonald_432";
        inst.description = "d e-substituted quadratic summation (pair S2)";
        inst.pair = find_pair(builtins, "S2");
        const double dd = ov("macdonald_432", "d", 2.0);
        const double me = ov("macdonald_432", "e", 0.8);
        const double mx = ov("macdonald_432", "x", 1.37);
        inst.env = ParamEnv{{"d", Scalar(dd)}};
        auto ma = [](int k) { return 1.5 * std::pow(1.1, k); };
        auto mb = [](int k) { return 0.7 * std::pow(0.93, k); };
        inst.a = IndexedSequence::from_function([ma](int k) { return Scalar(ma(k)); });
        inst.b = IndexedSequence::from_function(
            [mb, dd, me](int k) { return Scalar(dd * me * mb(k)); });
        inst.c = IndexedSequence::constant(1.0);
        inst.d = IndexedSequence::constant(mx / me);
        auto fac = [ma, mb, dd, me, mx](int j) {
            const double aj = ma(j), bj = mb(j);
            return Scalar((1.0 - aj) * (1.0 - aj / dd) *
                          (1.0 - bj * dd * me * me / mx) * (1.0 - mx * bj) /
                          ((1.0 - aj * me / mx) * (1.0 - aj * mx / (dd * me)) *
                           (1.0 - dd * me * bj) * (1.0 - me * bj)));
        };
        inst.reference = [fac](int m, int n) {
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        inst.display_residual = [ma, mb, dd, me, mx, fac](int m, int) {
            Scalar s = 0.0;
            for (int k = 0; k <= m; ++k) {
                Scalar t = (mb(k) - ma(k) / (dd * me)) *
                           (1.0 - me * ma(k) * mb(k));
                t *= gp([&](int j) { return Scalar((1.0 - ma(j)) * (1.0 - ma(j) / dd)); },
                        1, k - 1);
                t /= gp(
                    [&](int j) {
                        return Scalar((1.0 - ma(j) * me / mx) *
                                      (1.0 - ma(j) * mx / (dd * me)));
                    },
                    1, k);
                t *= gp(
                    [&](int j) {
                        return Scalar((1.0 - mb(j) * dd * me * me / mx) *
                                      (1.0 - mx * mb(j)));
                    },
                    1, k - 1);
                t /= gp(
                    [&](int j) {
                        return Scalar((1.0 - dd * me * mb(j)) *
                                      (1.0 - me * mb(j)));
                    },
                    1, k);
                s += t;
            }
            const double a0 = ma(0), b0 = mb(0);
            const Scalar first =
                (1.0 - a0 * me / mx) * (1.0 - a0 * mx / (dd * me)) *
                (1.0 - dd * me * b0) * (1.0 - me * b0) /
                ((1.0 - b0 * dd * me * me / mx) * (1.0 - mx * b0) *
                 (1.0 - a0) * (1.0 - a0 / dd));
            const Scalar rhs =
                mx / ((mx - me) * (mx - dd * me)) * (first - gp(fac, 1, m));
            return rel(s, rhs);
        };
        out.push_back(std::move(inst));
    }

    // (V.c) the general k-dependent-d form via square-root substitutions
    {
        SummationInstance inst;
        inst.name = "macdonald_general";
        inst.description = "general quadratic summation (fixed d = 1 pair)";
        inst.pair = macdonald_pair();
        const double ee = ov("macdonald_general", "e", 0.8);
        auto qa = [](int k) { return 1.5 * std::pow(1.1, k); };
        auto qb = [](int k) { return 0.7 * std::pow(0.93, k); };
        auto qc = [](int k) { return 0.4 * std::pow(1.2, k); };
        auto qd = [](int k) { return 1.9 * std::pow(0.88, k); };
        inst.a = IndexedSequence::from_function(
            [qa, qd](int k) { return Scalar(qa(k) / std::sqrt(qd(k))); });
        inst.b = IndexedSequence::from_function([qb, qd, ee](int k) {
            return Scalar(1.0 / (qb(k) * ee * std::sqrt(qd(k))));
        });
        inst.c = IndexedSequence::from_function(
            [qd](int k) { return Scalar(std::sqrt(qd(k))); });
        inst.d = IndexedSequence::from_function([qc, qd, ee](int k) {
            return Scalar(ee * std::sqrt(qd(k)) / qc(k));
        });
        auto fac = [qa, qb, qc, qd, ee](int j) {
            const double aj = qa(j), bj = qb(j), cj = qc(j), dj = qd(j);
            return Scalar((1.0 - aj) * (1.0 - aj / dj) * (1.0 - bj * cj) *
                          (1.0 - bj * dj * ee * ee / cj) /
                          ((1.0 - aj * ee / cj) * (1.0 - aj * cj / (dj * ee)) *
                           (1.0 - bj * ee) * (1.0 - bj * dj * ee)));
        };
        inst.reference = [fac](int m, int n) {
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        inst.display_residual = [qa, qb, qc, qd, ee, fac](int m, int n) {
            Scalar s = 0.0;
            for (int k = -n; k <= m; ++k) {
                const double ak = qa(k), bk = qb(k), ck = qc(k), dk = qd(k);
                Scalar t = ee * (1.0 - ak * bk * ee) * (bk - ak / (dk * ee)) *
                           (1.0 - ck / ee) * (1.0 - dk * ee / ck);
                t *= gp([&](int j) { return Scalar((1.0 - qa(j)) * (1.0 - qa(j) / qd(j))); },
                        1, k - 1);
                t /= gp(
                    [&](int j) {
                        return Scalar((1.0 - qa(j) * ee / qc(j)) *
                                      (1.0 - qa(j) * qc(j) / (qd(j) * ee)));
                    },
                    1, k);
                t *= gp(
                    [&](int j) {
                        return Scalar((1.0 - qb(j) * qc(j)) *
                                      (1.0 - qb(j) * qd(j) * ee * ee / qc(j)));
                    },
                    1, k - 1);
                t /= gp(
                    [&](int j) {
                        return Scalar((1.0 - qb(j) * ee) *
                                      (1.0 - qb(j) * qd(j) * ee));
                    },
                    1, k);
                s += t;
            }
            const Scalar rhs =
                gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
            return rel(s, rhs);
        };
        out.push_back(std::move(inst));
    }

    // (VI) the theta pair; residuals are truncation-limited, not exact
    {
        SummationInstance inst;
        inst.name = "elliptic_theta";
        inst.description = "theta-function summation (pair S4)";
        inst.pair = find_pair(builtins, "S4");
        const double qv = ov("elliptic_theta", "q", 0.3);
        inst.env = ParamEnv{{"q", Scalar(qv)}};
        inst.a = IndexedSequence::geometric(1.10, 1.04);
        inst.b = IndexedSequence::geometric(0.72, 0.97);
        inst.c = IndexedSequence::geometric(1.31, 1.02);
        inst.d = IndexedSequence::geometric(0.55, 1.06);
        inst.tol_override = 100.0 * tr.tail_tol;
        auto ea = [](int k) { return 1.10 * std::pow(1.04, k); };
        auto eb = [](int k) { return 0.72 * std::pow(0.97, k); };
        auto ec = [](int k) { return 1.31 * std::pow(1.02, k); };
        auto ed = [](int k) { return 0.55 * std::pow(1.06, k); };
        const Truncation trc = tr;
        inst.reference = [qv, ea, eb, ec, ed, trc](int m, int n) {
            auto th = [&](double u) { return theta(Scalar(u), Scalar(qv), trc); };
            auto fac = [&](int j) {
                const double aj = ea(j), bj = eb(j), cj = ec(j), dj = ed(j);
                return th(aj * cj) * th(aj / cj) * th(bj * dj) * th(bj / dj) /
                       (th(bj * cj) * th(bj / cj) * th(aj * dj) * th(aj / dj));
            };
            return gp(fac, 1, m) - gp([&](int j) { return 1.0 / fac(j); }, -n, 0);
        };
        out.push_back(std::move(inst));
    }

    return out;
}

}  // namespace fg
