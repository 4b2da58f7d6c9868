#include "doctest.h"

#include <cmath>

#include "fg/summation.hpp"

using namespace fg;

namespace {

const Truncation kTr;

FunctionPair by_name(const std::string& n) {
    for (auto& p : builtin_pairs(kTr))
        if (p.name == n) return p;
    throw std::logic_error("no pair " + n);
}

SummationInstance find_instance(const std::vector<SummationInstance>& cat,
                                const std::string& name) {
    for (const auto& inst : cat)
        if (inst.name == name) return inst;
    throw std::logic_error("no catalog instance " + name);
}

}  // namespace

TEST_CASE("catalog inventory") {
    const auto cat = catalog(kTr);
    CHECK(cat.size() == 17);
    for (const char* n :
         {"one_xy", "subbarao_verma_31", "xy_xy", "subbarao_verma_21",
          "ab_form", "krattenthaler_chu", "chu_theorem_A", "pair_C2",
          "gasper_rahman", "gosper", "gasper", "pair_C3", "pair_S2",
          "chu_gasper_rahman", "macdonald_432", "macdonald_general",
          "elliptic_theta"})
        CHECK_NOTHROW((void)find_instance(cat, n));
}

TEST_CASE("every catalog instance holds over its full (m, n) grid") {
    for (const auto& inst : catalog(kTr)) {
        for (int m = 0; m <= inst.m; ++m)
            for (int n = 0; n <= inst.n; ++n) {
                const SummationCheck chk = verify_summation(inst, m, n, 1e-9);
                INFO(inst.name, " m=", m, " n=", n, " id=",
                     chk.identity_residual, " ref=", chk.reference_residual,
                     " disp=", chk.display_residual);
                CHECK(chk.pass);
            }
    }
}

TEST_CASE("generic instance with hand-picked affine sequences") {
    SummationInstance inst;
    inst.name = "hand";
    inst.pair = by_name("S1");
    inst.env = inst.pair.default_env;
    inst.a = IndexedSequence::affine(10.0, 1.0);  // a_k = k + 10
    inst.b = IndexedSequence::affine(0.4, 1.0);   // b_k = k + 0.4
    inst.c = IndexedSequence::affine(1.0, 2.0);   // c_k = 2k + 1
    inst.d = IndexedSequence::affine(2.0, 3.0);   // d_k = 3k + 2
    const SummationCheck chk = verify_summation(inst, 3, 2, 1e-12);
    CHECK(chk.pass);
    CHECK(chk.identity_residual <= 1e-13);
}

TEST_CASE("m = n = 0 reduces to a single term") {
    for (const auto& inst : catalog(kTr)) {
        const Scalar L = lhs_sum(inst, 0, 0);
        CHECK(std::abs(L - summand(inst, 0)) <=
              1e-14 * std::max(1.0, std::abs(L)));
    }
}

TEST_CASE("degenerate c = d collapses both sides to zero") {
    SummationInstance inst;
    inst.pair = by_name("S1");
    inst.env = inst.pair.default_env;
    inst.a = IndexedSequence::affine(10.0, 1.0);
    inst.b = IndexedSequence::affine(0.3, 1.0);  // keeps b_j - c_j nonzero
    inst.c = IndexedSequence::affine(1.0, 2.0);
    inst.d = inst.c;
    // every summand carries g(c_k, d_k) = 0 and the two boundary products
    // coincide
    for (int k = -2; k <= 3; ++k) CHECK(std::abs(summand(inst, k)) == 0.0);
    CHECK(std::abs(rhs_products(inst, 3, 2)) <= 1e-13);
}

TEST_CASE("telescoping: appending one term moves the sum by exactly that term") {
    for (const auto& inst : catalog(kTr)) {
        for (int m = 1; m <= inst.m; ++m) {
            const Scalar step = lhs_sum(inst, m, 0) - lhs_sum(inst, m - 1, 0);
            const Scalar t = summand(inst, m);
            const double scale =
                std::max({std::abs(lhs_sum(inst, m, 0)), std::abs(t), 1.0});
            INFO(inst.name, " m=", m);
            CHECK(std::abs(step - t) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("unilateral specialization") {
    const FunctionPair s1 = by_name("S1");
    const auto as_ = IndexedSequence::affine(10.0, 1.0);
    const auto bs = IndexedSequence::affine(0.0, 1.0);
    const auto uni = unilateral_instance(s1, s1.default_env, as_, bs, 7.5, 5);
    // m = 0: both sides are the empty product
    CHECK(std::abs(lhs_sum(uni, 0, 0) - 1.0) <= 1e-14);
    CHECK(std::abs(uni.reference(0, 0) - 1.0) == 0.0);
    const SummationCheck chk = verify_summation(uni, 5, 0, 1e-11);
    CHECK(chk.pass);

    const FunctionPair c2 = by_name("C2");
    const auto xs2 = IndexedSequence::geometric(0.3, 1.1);
    const auto bs2 = IndexedSequence::geometric(0.7, 1.3);
    const auto uni2 =
        unilateral_instance(c2, c2.default_env, xs2, bs2, 1.9, 5);
    CHECK(verify_summation(uni2, 5, 0, 1e-11).pass);
}

TEST_CASE("bibasic unilateral closed form at m = 1, by hand") {
    const auto inst = find_instance(catalog(kTr), "gosper");
    const double a = 0.6, p = 0.35, q = 0.45, x = 1.3;
    // (a p; p)_1 (q/x; q)_1 x / ((q; q)_1 (a p x; p)_1)
    const double hand =
        (1.0 - a * p) * (1.0 - q / x) * x / ((1.0 - q) * (1.0 - a * p * x));
    CHECK(std::abs(lhs_sum(inst, 1, 0) - hand) <= 1e-14 * std::abs(hand));
    CHECK(std::abs(inst.reference(1, 0) - hand) <= 1e-14 * std::abs(hand));
}

TEST_CASE("parameter reduction chains agree") {
    // d -> 1 turns the three-parameter bibasic instance into the
    // two-parameter one
    const auto gasper = find_instance(catalog(kTr), "gasper");
    const auto gr_d1 =
        find_instance(catalog(kTr, {{"catalog.gasper_rahman.d", 1.0}}),
                      "gasper_rahman");
    for (int m = 0; m <= 5; ++m) {
        const Scalar u = lhs_sum(gr_d1, m, 0), v = lhs_sum(gasper, m, 0);
        CHECK(std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(v)));
        CHECK(std::abs(v - gasper.reference(m, 0)) <=
              1e-12 * std::max(1.0, std::abs(v)));
    }
    // b -> 0 degenerates the two-parameter instance to the f = 1 - a u v one
    // (its d_k = 1/x convention corresponds to x -> 1/x in the unilateral form)
    const auto gasper_b0 = find_instance(
        catalog(kTr, {{"catalog.gasper.b", 0.0}}), "gasper");
    const auto gosper_inv = find_instance(
        catalog(kTr, {{"catalog.gosper.x", 1.0 / 1.3}}), "gosper");
    for (int m = 0; m <= 5; ++m) {
        const Scalar u = lhs_sum(gasper_b0, m, 0), v = lhs_sum(gosper_inv, m, 0);
        CHECK(std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(v)));
    }
}

TEST_CASE("parameter overrides reach the instances") {
    const auto base = find_instance(catalog(kTr), "pair_C2");
    const auto moved =
        find_instance(catalog(kTr, {{"catalog.pair_C2.a", 0.41}}), "pair_C2");
    CHECK(std::abs(lhs_sum(base, 3, 2) - lhs_sum(moved, 3, 2)) > 1e-6);
    CHECK(verify_summation(moved, 1e-9).pass);
}

TEST_CASE("theta instance carries its truncation-limited tolerance") {
    const auto ell = find_instance(catalog(kTr), "elliptic_theta");
    REQUIRE(ell.tol_override.has_value());
    CHECK(*ell.tol_override == doctest::Approx(100.0 * kTr.tail_tol));
    CHECK(verify_summation(ell, 1e-15).pass);  // override governs, not tol
}

TEST_CASE("non-orthogonal pair breaks the identity") {
    const auto bad = broken_instance();
    const SummationCheck chk = verify_summation(bad, 3, 2, 1e-6);
    CHECK_FALSE(chk.pass);
    CHECK(chk.identity_residual > 1e-3);
}
