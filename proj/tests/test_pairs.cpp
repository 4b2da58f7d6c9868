#include "doctest.h"

#include <cmath>

#include "fg/pairs.hpp"

using namespace fg;

namespace {
const Truncation kTr;
}

TEST_CASE("orthogonality residual: hand values") {
    auto pairs = builtin_pairs(kTr);
    const FunctionPair& s1 = pairs[0];
    // f = g = x - y is orthogonal identically
    CHECK(std::abs(orthogonality_residual(s1, s1.default_env, 1.0, 2.0, 3.0,
                                          4.0)) <= 1e-14);
    // f = x y^2, g = x - y at (1,2,3,4): (-1)(36) - (-2)(16) + (-1)(4) = -8
    const FunctionPair bad = broken_pair();
    const Scalar r =
        orthogonality_residual(bad, bad.default_env, 1.0, 2.0, 3.0, 4.0);
    CHECK(r.real() == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK(r.imag() == doctest::Approx(0.0));
}

TEST_CASE("cross factorization: hand values") {
    auto pairs = builtin_pairs(kTr);
    const FunctionPair& s1 = pairs[0];
    // (-2)(-2) - (-1)(-3) - (-1)(-1) = 0
    CHECK(std::abs(cross_factorization_residual(s1, s1.default_env, 1.0, 2.0,
                                                3.0, 4.0)) <= 1e-14);
    const FunctionPair bad = broken_pair();
    CHECK(std::abs(cross_factorization_residual(bad, bad.default_env, 1.0, 2.0,
                                                3.0, 4.0)) > 0.1);
}

TEST_CASE("built-in pair inventory") {
    auto pairs = builtin_pairs(kTr);
    REQUIRE(pairs.size() == 7);
    const char* names[] = {"S1", "S2", "S3", "S4", "C1", "C2", "C3"};
    for (size_t i = 0; i < 7; ++i) CHECK(pairs[i].name == names[i]);
    for (const auto& p : pairs) CHECK(p.claims_g_antisymmetric);
    for (size_t i = 0; i < 4; ++i) CHECK(pairs[i].claims_f_self_orthogonal);
}

TEST_CASE("every built-in pair passes its sampled checks") {
    auto pairs = builtin_pairs(kTr);
    for (const auto& p : pairs) {
        Rng rng(1000 + static_cast<std::uint64_t>(p.name[0]) * 7 + p.name[1]);
        const double tol = (p.name == "S4") ? 100.0 * kTr.tail_tol : 1e-9;
        const PairCheckResult res = check_pair(p, p.default_env, rng, 300, tol);
        INFO(p.name, " residual ", res.max_rel_residual);
        CHECK(res.pass);
        CHECK(res.samples_run == 300);
    }
}

TEST_CASE("specific pair spot checks with fixed arguments") {
    auto pairs = builtin_pairs(kTr);
    const FunctionPair& c2 = pairs[5];
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Scalar a = rng.annulus(0.3, 1.5), b = rng.annulus(0.3, 1.5);
        const Scalar c = rng.annulus(0.3, 1.5), x = rng.annulus(0.3, 1.5);
        CHECK(std::abs(orthogonality_residual(c2, c2.default_env, a, b, c, x)) <=
              1e-12 * 100.0);
    }
}

TEST_CASE("broken pair is rejected") {
    const FunctionPair bad = broken_pair();
    Rng rng(11);
    const PairCheckResult res = check_pair(bad, bad.default_env, rng, 200, 1e-9);
    CHECK_FALSE(res.pass);
    CHECK(res.max_rel_residual >= 1.0);
}

TEST_CASE("unbound parameter raises") {
    auto pairs = builtin_pairs(kTr);
    const FunctionPair& s2 = pairs[1];
    ParamEnv empty;
    CHECK_THROWS_AS((void)s2.f(1.0, 2.0, empty), std::invalid_argument);
}

TEST_CASE("antisymmetry of every g") {
    auto pairs = builtin_pairs(kTr);
    Rng rng(23);
    for (const auto& p : pairs) {
        for (int i = 0; i < 50; ++i) {
            const Scalar x = rng.annulus(0.3, 1.5), y = rng.annulus(0.3, 1.5);
            if (p.pole_predicate && (p.pole_predicate(x, y, p.default_env) ||
                                     p.pole_predicate(y, x, p.default_env)))
                continue;
            const Scalar s = p.g(x, y, p.default_env) + p.g(y, x, p.default_env);
            const double scale =
                std::max(std::abs(p.g(x, y, p.default_env)), 1e-30);
            CHECK(std::abs(s) <= 1e-11 * std::max(scale, 1.0));
        }
    }
}
