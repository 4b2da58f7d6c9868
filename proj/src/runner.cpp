#include "fg/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "fg/inversion.hpp"
#include "fg/laurent.hpp"
#include "fg/pairs.hpp"
#include "fg/qseries.hpp"
#include "fg/summation.hpp"

namespace fg {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// per-target stream: decorrelated from other targets but reproducible
Rng target_rng(const RunConfig& cfg, const std::string& name) {
    return Rng(cfg.seed ^ fnv1a(name));
}

double effective_tol(const RunConfig& cfg, double budget) {
    return std::max(cfg.tol, budget);
}

ParamEnv env_with_overrides(const FunctionPair& pair, const RunConfig& cfg,
                            const std::string& prefix) {
    ParamEnv env = pair.default_env;
    for (const auto& name : pair.param_names) {
        const auto it = cfg.overrides.find(prefix + "." + name);
        if (it != cfg.overrides.end()) env.set(name, it->second);
    }
    return env;
}

VerificationReport pair_report(const FunctionPair& pair, const RunConfig& cfg,
                               double budget) {
    VerificationReport r;
    r.name = "pair/" + pair.name;
    Rng rng = target_rng(cfg, r.name);
    const ParamEnv env = env_with_overrides(pair, cfg, "pair." + pair.name);
    const double tol = effective_tol(cfg, budget);
    const PairCheckResult res = check_pair(pair, env, rng, cfg.samples, tol);
    r.max_rel_residual = res.max_rel_residual;
    r.max_abs_residual = res.max_abs_residual;
    r.samples_run = res.samples_run;
    r.rejections = res.rejections;
    r.status = res.pass ? "pass" : "fail";
    return r;
}

// One random geometric sequence draw for the inversion windows, rejected
// when any of the denominators used by build_F/build_G gets too small.
bool draw_sequences(const FunctionPair& pair, const ParamEnv& env, Rng& rng,
                    int size, IndexedSequence& xs, IndexedSequence& bs) {
    const double sx = rng.uniform(0.2, 0.5);
    const double rx = rng.uniform(1.05, 1.15);
    const double sb = rng.uniform(0.55, 0.9);
    const double rb = rng.uniform(1.2, 1.4);
    xs = IndexedSequence::geometric(sx, rx);
    bs = IndexedSequence::geometric(sb, rb);
    try {
        for (int k = 0; k < size; ++k) {
            if (std::abs(pair.f(xs(k), bs(k), env)) < 1e-4) return false;
            for (int i = 0; i < size; ++i)
                if (i != k && std::abs(pair.g(bs(i), bs(k), env)) < 1e-4)
                    return false;
        }
    } catch (const EvalError&) {
        return false;
    }
    return true;
}

VerificationReport inversion_report(const FunctionPair& pair,
                                    const RunConfig& cfg) {
    VerificationReport r;
    r.name = "inversion/" + pair.name;
    Rng rng = target_rng(cfg, r.name);
    const ParamEnv env = env_with_overrides(pair, cfg, "pair." + pair.name);
    const double tol = effective_tol(cfg, 1e-7);
    const int size = 12;
    const int draws = 10;
    bool ok = true;
    for (int d = 0; d < draws; ++d) {
        IndexedSequence xs, bs;
        int attempts = 0;
        while (!draw_sequences(pair, env, rng, size, xs, bs)) {
            ++r.rejections;
            if (++attempts > 50) {
                r.status = "fail";
                r.detail = "could not draw admissible sequences";
                return r;
            }
        }
        const MatrixWindow F = build_F(pair, env, xs, bs, 0, size - 1);
        const MatrixWindow G = build_G(pair, env, xs, bs, 0, size - 1);
        const InverseCheckResult res = verify_inverse(F, G, tol);
        const double worst = std::max(res.max_residual_fg, res.max_residual_gf);
        if (worst > r.max_rel_residual) {
            r.max_rel_residual = worst;
            std::ostringstream os;
            os << "draw " << d;
            r.detail = os.str();
        }
        r.max_abs_residual = std::max(r.max_abs_residual, worst);
        ++r.samples_run;
        ok = ok && res.pass;
    }
    r.status = ok ? "pass" : "fail";
    return r;
}

VerificationReport catalog_report(const SummationInstance& inst,
                                  const RunConfig& cfg) {
    VerificationReport r;
    r.name = "catalog/" + inst.name;
    const double tol = inst.tol_override.value_or(cfg.tol);
    bool ok = true;
    for (int m = 0; m <= 6; ++m) {
        for (int n = 0; n <= 4; ++n) {
            const SummationCheck chk = verify_summation(inst, m, n, tol);
            const double worst =
                std::max({chk.identity_residual, chk.reference_residual,
                          chk.display_residual});
            if (worst > r.max_rel_residual) {
                r.max_rel_residual = worst;
                std::ostringstream os;
                os << "m=" << m << " n=" << n;
                r.detail = os.str();
            }
            ++r.samples_run;
            ok = ok && chk.pass;
        }
    }
    r.max_abs_residual = r.max_rel_residual;
    r.status = ok ? "pass" : "fail";
    return r;
}

VerificationReport zero_sum_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "inversion/zero_sum";
    const auto pairs = builtin_pairs(cfg.truncation);
    const FunctionPair& s1 = pairs[0];
    const FunctionPair& c2 = pairs[5];
    const auto affine_a = IndexedSequence::affine(10.0, 1.0);
    const auto affine_b = IndexedSequence::affine(0.0, 1.0);
    const auto geo_x = IndexedSequence::geometric(0.3, 1.1);
    const auto geo_b = IndexedSequence::geometric(0.7, 1.3);
    for (int m = 0; m <= 3; ++m) {
        for (int n = 1; n <= 3; ++n) {
            const double r1 = std::abs(
                zero_sum_residual(s1, s1.default_env, affine_a, affine_b, m, n));
            const double r2 = std::abs(
                zero_sum_residual(c2, c2.default_env, geo_x, geo_b, m, n));
            r.max_abs_residual = std::max({r.max_abs_residual, r1, r2});
            r.samples_run += 2;
        }
    }
    r.max_rel_residual = r.max_abs_residual;
    r.status = r.max_rel_residual <= effective_tol(cfg, 0.0) ? "pass" : "fail";
    return r;
}

VerificationReport schlosser_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "bilateral/biorthogonality";
    const Scalar a = 0.31, b = 0.17, c = 0.23, q = 0.4;
    const int K = 25;
    const double tol = effective_tol(cfg, 1e-6);
    // decay gate: the outermost retained terms must be negligible
    for (int nn = -3; nn <= 3; ++nn) {
        for (int mm = -3; mm <= 3; ++mm) {
            Scalar s = 0.0;
            for (int k = -K; k <= K; ++k) {
                const auto [A_nk, _] =
                    schlosser_entries(a, b, c, q, nn, k, cfg.truncation);
                const auto [__, B_km] =
                    schlosser_entries(a, b, c, q, k, mm, cfg.truncation);
                s += A_nk * B_km;
            }
            const double want = (nn == mm) ? 1.0 : 0.0;
            const double res = std::abs(s - want);
            if (res > r.max_abs_residual) {
                r.max_abs_residual = res;
                std::ostringstream os;
                os << "n=" << nn << " m=" << mm;
                r.detail = os.str();
            }
            ++r.samples_run;
        }
    }
    const auto [Ae, _] = schlosser_entries(a, b, c, q, 0, K, cfg.truncation);
    const auto [__, Be] = schlosser_entries(a, b, c, q, K, 0, cfg.truncation);
    if (std::abs(Ae * Be) > 1e-10) {
        r.status = "fail";
        r.detail = "insufficient term decay at |k|=K";
        return r;
    }
    r.max_rel_residual = r.max_abs_residual;
    r.status = r.max_abs_residual <= tol ? "pass" : "fail";
    return r;
}

VerificationReport bilateral_h_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "bilateral/h_limit";
    const Scalar a = 0.31, b = 0.17, c = 0.23, q = 0.4;
    const auto pairs = builtin_pairs(cfg.truncation);
    FunctionPair s2 = pairs[1];
    ParamEnv env;
    env.set("d", b * c / a);  // (y-x)(1 - (a/(b c)) x y)
    const auto as_ = IndexedSequence::geometric(b, q);
    const auto bs = IndexedSequence::geometric(c, q);
    const auto A = IndexedSequence::geometric(1.0, 1.0 / q);
    const double tol = effective_tol(cfg, 1e-6);
    bool ok = true;
    for (int M = 0; M <= 2; ++M) {
        const BilateralHResult res =
            bilateral_h(s2, env, as_, bs, A, M, cfg.truncation);
        const Scalar closed = schlosser_h_closed(a, b, c, q, M, cfg.truncation);
        const double d = rel_residual(res.value, closed);
        if (d > r.max_rel_residual) {
            r.max_rel_residual = d;
            std::ostringstream os;
            os << "M=" << M;
            r.detail = os.str();
        }
        r.max_abs_residual = std::max(r.max_abs_residual, std::abs(res.value - closed));
        ok = ok && res.hypothesis_ok;
        ++r.samples_run;
    }
    r.status = (ok && r.max_rel_residual <= tol) ? "pass" : "fail";
    if (!ok) r.detail = "equal-product-ratio hypothesis violated";
    return r;
}

VerificationReport t521_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "bilateral/theta_addition";
    Rng rng = target_rng(cfg, r.name);
    const double tol = effective_tol(cfg, 0.0);
    for (int i = 0; i < 50; ++i) {
        const Scalar q = rng.uniform(0.1, 0.4);
        const Scalar a = rng.uniform(0.15, 0.85);
        const Scalar b = rng.uniform(0.15, 0.85);
        const Scalar c = rng.uniform(0.15, 0.85);
        const Scalar d = rng.uniform(0.15, 0.85);
        const double res =
            transformation_521_residual(a, b, c, d, q, cfg.truncation);
        if (res > r.max_rel_residual) {
            r.max_rel_residual = res;
            std::ostringstream os;
            os << "sample " << i;
            r.detail = os.str();
        }
        ++r.samples_run;
    }
    r.max_abs_residual = r.max_rel_residual;
    r.status = r.max_rel_residual <= tol ? "pass" : "fail";
    return r;
}

VerificationReport jacobi_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "series/jacobi_triple";
    Rng rng = target_rng(cfg, r.name);
    const double tol = effective_tol(cfg, 0.0);
    for (int i = 0; i < 100; ++i) {
        const Scalar x = rng.annulus(0.2, 2.0);
        const Scalar q = rng.annulus(0.1, 0.5);
        const double res = jacobi_triple_residual(x, q, cfg.truncation);
        r.max_abs_residual = std::max(r.max_abs_residual, res);
        ++r.samples_run;
    }
    r.max_rel_residual = r.max_abs_residual;
    r.status = r.max_abs_residual <= tol ? "pass" : "fail";
    return r;
}

VerificationReport theta_series_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "series/theta_pair";
    Rng rng = target_rng(cfg, r.name);
    const Scalar q = 0.3;
    const BilateralSeries2 s = theta_pair_series(q, 12, cfg.truncation);
    const double tol = effective_tol(cfg, 0.0);
    for (int i = 0; i < 20; ++i) {
        const double x = rng.uniform(0.55, 1.45);
        const double y = rng.uniform(0.55, 1.45);
        const Scalar lhs = eval_series(s, x, y);
        const Scalar rhs =
            y * theta(x * y, q, cfg.truncation) * theta(x / y, q, cfg.truncation);
        const double res = rel_residual(lhs, rhs);
        if (res > r.max_rel_residual) {
            r.max_rel_residual = res;
            std::ostringstream os;
            os << "x=" << x << " y=" << y;
            r.detail = os.str();
        }
        r.max_abs_residual = std::max(r.max_abs_residual, std::abs(lhs - rhs));
        ++r.samples_run;
    }
    r.status = r.max_rel_residual <= tol ? "pass" : "fail";
    return r;
}

VerificationReport series_scan_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "series/orthogonality_scans";
    Rng rng = target_rng(cfg, r.name);
    const int w = std::min(cfg.window, 6);
    const double tol = effective_tol(cfg, 0.0);
    UnivariateSeries P(w), Q(w), P2(w), Q2(w);
    for (int i = -w; i <= w; ++i) {
        P.set(i, rng.annulus(0.3, 1.0));
        Q.set(i, rng.annulus(0.3, 1.0));
        P2.set(i, rng.annulus(0.3, 1.0));
        Q2.set(i, rng.annulus(0.3, 1.0));
    }
    const BilateralSeries2 g = construct_self_orthogonal(P, Q);
    const double gscale = std::max(g.max_abs() * g.max_abs(), 1e-30);
    const double self_res = scan_self_orth(g) / gscale;
    const Pivot pv{1, 0};
    const double pivot_res = scan_pivot(g, pv) / gscale;
    const BilateralSeries2 f = construct_orthogonal_to(g, P2, Q2, pv);
    const double cscale = std::max(g.max_abs() * f.max_abs(), 1e-30);
    const double cross_res = scan_cross_orth(g, f) / cscale;
    r.max_rel_residual = std::max({self_res, pivot_res, cross_res});
    r.samples_run = 3;
    // direction check: a generic (non rank-2) coefficient array must be
    // rejected loudly, otherwise the scans have no power
    BilateralSeries2 bad(w);
    for (int i = -w; i <= w; ++i)
        for (int j = -w; j <= w; ++j)
            bad.set(i, j, i == j ? Scalar(0.0) : rng.annulus(0.3, 1.0));
    const double bad_res =
        scan_self_orth(bad) / std::max(bad.max_abs() * bad.max_abs(), 1e-30);
    if (bad_res < 1e-3) {
        r.status = "fail";
        r.detail = "scan failed to reject a generic series";
        return r;
    }
    r.max_abs_residual = r.max_rel_residual;
    r.status = r.max_rel_residual <= tol ? "pass" : "fail";
    return r;
}

VerificationReport broken_pair_report(const RunConfig& cfg) {
    VerificationReport r = pair_report(broken_pair(), cfg, 0.0);
    r.name = "adversarial/broken_pair";
    return r;
}

VerificationReport broken_inversion_report(const RunConfig& cfg) {
    VerificationReport r;
    r.name = "adversarial/broken_inversion";
    const FunctionPair p = broken_pair();
    const auto xs = IndexedSequence::affine(10.0, 1.0);
    const auto bs = IndexedSequence::affine(1.0, 1.0);
    const MatrixWindow F = build_F(p, p.default_env, xs, bs, 0, 5);
    const MatrixWindow G = build_G(p, p.default_env, xs, bs, 0, 5);
    const InverseCheckResult res = verify_inverse(F, G, effective_tol(cfg, 0.0));
    r.max_rel_residual = std::max(res.max_residual_fg, res.max_residual_gf);
    r.max_abs_residual = r.max_rel_residual;
    r.samples_run = 1;
    r.status = res.pass ? "pass" : "fail";
    return r;
}

VerificationReport broken_summation_report(const RunConfig& cfg) {
    VerificationReport r = catalog_report(broken_instance(), cfg);
    r.name = "adversarial/broken_summation";
    return r;
}

}  // namespace

std::vector<Target> build_registry(bool adversarial) {
    std::vector<Target> out;
    Truncation tr;  // defaults; targets re-read cfg.truncation at run time
    for (const auto& p : builtin_pairs(tr)) {
        const std::string name = p.name;
        const double budget = (name == "S4") ? 100.0 * tr.tail_tol : 0.0;
        out.push_back({"pair/" + name, "orthogonality check: " + p.description,
                       budget, [name, budget](const RunConfig& cfg) {
                           const auto ps = builtin_pairs(cfg.truncation);
                           for (const auto& q : ps)
                               if (q.name == name)
                                   return pair_report(q, cfg, budget);
                           throw UnknownTarget("pair " + name);
                       }});
        out.push_back({"inversion/" + name,
                       "12x12 inverse-matrix windows with pair " + name, 1e-7,
                       [name](const RunConfig& cfg) {
                           const auto ps = builtin_pairs(cfg.truncation);
                           for (const auto& q : ps)
                               if (q.name == name) return inversion_report(q, cfg);
                           throw UnknownTarget("pair " + name);
                       }});
    }
    for (const auto& inst : catalog(tr)) {
        const std::string name = inst.name;
        out.push_back({"catalog/" + name, "summation identity: " + inst.description,
                       inst.tol_override.value_or(0.0),
                       [name](const RunConfig& cfg) {
                           for (const auto& i :
                                catalog(cfg.truncation, cfg.overrides))
                               if (i.name == name) return catalog_report(i, cfg);
                           throw UnknownTarget("catalog " + name);
                       }});
    }
    out.push_back({"inversion/zero_sum",
                   "alternating double-product sum vanishes identically", 0.0,
                   zero_sum_report});
    out.push_back({"bilateral/biorthogonality",
                   "truncated bilateral biorthogonality, q-lattice entries", 1e-6,
                   schlosser_report});
    out.push_back({"bilateral/h_limit",
                   "extrapolated bilateral limit vs closed form", 1e-6,
                   bilateral_h_report});
    out.push_back({"bilateral/theta_addition",
                   "three-term infinite-product identity, 50 samples", 0.0,
                   t521_report});
    out.push_back({"series/jacobi_triple",
                   "triple-product series vs product form, 100 samples", 0.0,
                   jacobi_report});
    out.push_back({"series/theta_pair",
                   "theta coefficient series vs closed form, window 12", 0.0,
                   theta_series_report});
    out.push_back({"series/orthogonality_scans",
                   "exhaustive coefficient-residual scans on window <= 6", 0.0,
                   series_scan_report});
    if (adversarial) {
        out.push_back({"adversarial/broken_pair",
                       "non-orthogonal pair; must fail", 0.0, broken_pair_report});
        out.push_back({"adversarial/broken_inversion",
                       "inverse matrices from a non-orthogonal pair; must fail",
                       0.0, broken_inversion_report});
        out.push_back({"adversarial/broken_summation",
                       "summation identity with a non-orthogonal pair; must fail",
                       0.0, broken_summation_report});
    }
    std::sort(out.begin(), out.end(),
              [](const Target& a, const Target& b) { return a.name < b.name; });
    return out;
}

VerificationReport run_target(const Target& t, const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    try {
        r = t.run(cfg);
    } catch (const EvalError& e) {
        r.name = t.name;
        r.status = "fail";
        r.detail = std::string("evaluation error: ") + e.what();
    }
    r.seed = cfg.seed;
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return r;
}

VerificationReport run_named(const std::string& name, const RunConfig& cfg) {
    // accept both the full registry path and the bare trailing name
    for (const auto& t : build_registry(true)) {
        if (t.name == name) return run_target(t, cfg);
        const auto slash = t.name.rfind('/');
        if (slash != std::string::npos && t.name.substr(slash + 1) == name)
            return run_target(t, cfg);
    }
    throw UnknownTarget("no such verification target: " + name);
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json o;
        o["name"] = r.name;
        o["status"] = r.status;
        o["max_abs_residual"] = r.max_abs_residual;
        o["max_rel_residual"] = r.max_rel_residual;
        o["samples_run"] = r.samples_run;
        o["rejections"] = r.rejections;
        o["seed"] = r.seed;
        o["elapsed_ms"] = r.elapsed_ms;
        if (!r.detail.empty()) o["detail"] = r.detail;
        arr.push_back(std::move(o));
    }
    nlohmann::json top;
    top["schema"] = 1;
    top["reports"] = std::move(arr);
    return top.dump(2);
}

std::string report_to_text(const VerificationReport& r) {
    std::ostringstream os;
    os.precision(3);
    os << (r.status == "pass" ? "PASS" : r.status == "fail" ? "FAIL" : "SKIP")
       << "  " << r.name << "  rel=" << std::scientific << r.max_rel_residual
       << "  abs=" << r.max_abs_residual << "  samples=" << r.samples_run;
    if (r.rejections > 0) os << "  rejections=" << r.rejections;
    if (!r.detail.empty()) os << "  [" << r.detail << "]";
    return os.str();
}

}  // namespace fg
