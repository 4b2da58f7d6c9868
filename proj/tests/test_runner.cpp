#include "doctest.h"

#include <algorithm>
#include <set>

#include "fg/runner.hpp"

using namespace fg;

TEST_CASE("registry contents and ordering") {
    const auto reg = build_registry(false);
    CHECK(reg.size() == 38);
    CHECK(std::is_sorted(reg.begin(), reg.end(),
                         [](const Target& a, const Target& b) {
                             return a.name < b.name;
                         }));
    std::set<std::string> names;
    for (const auto& t : reg) names.insert(t.name);
    for (const char* n :
         {"pair/S1", "pair/S4", "inversion/S1", "inversion/zero_sum",
          "catalog/elliptic_theta", "catalog/gosper", "series/jacobi_triple",
          "series/theta_pair", "series/orthogonality_scans",
          "bilateral/biorthogonality", "bilateral/h_limit",
          "bilateral/theta_addition"})
        CHECK(names.count(n) == 1);
    // adversarial targets appear only on request
    const auto adv = build_registry(true);
    CHECK(adv.size() == 41);
    std::set<std::string> adv_names;
    for (const auto& t : adv) adv_names.insert(t.name);
    for (const char* n : {"adversarial/broken_pair", "adversarial/broken_inversion",
                          "adversarial/broken_summation"})
        CHECK(adv_names.count(n) == 1);
    CHECK(names.count("adversarial/broken_pair") == 0);
}

TEST_CASE("run_named accepts full paths and bare trailing names") {
    RunConfig cfg;
    cfg.samples = 50;
    const VerificationReport a = run_named("inversion/zero_sum", cfg);
    const VerificationReport b = run_named("zero_sum", cfg);
    CHECK(a.status == "pass");
    CHECK(a.name == b.name);
    CHECK(a.max_abs_residual == b.max_abs_residual);
    CHECK_THROWS_AS(run_named("no/such/target", cfg), UnknownTarget);
}

TEST_CASE("identical configs give byte-identical residual fields") {
    RunConfig cfg;
    cfg.samples = 50;
    for (const char* n : {"pair/C2", "inversion/S2", "catalog/pair_S2",
                          "series/orthogonality_scans"}) {
        const VerificationReport a = run_named(n, cfg);
        const VerificationReport b = run_named(n, cfg);
        CHECK(a.status == b.status);
        CHECK(a.max_abs_residual == b.max_abs_residual);
        CHECK(a.max_rel_residual == b.max_rel_residual);
        CHECK(a.samples_run == b.samples_run);
        CHECK(a.rejections == b.rejections);
        CHECK(a.seed == b.seed);
    }
    // the report records the configured master seed
    const VerificationReport c = run_named("pair/C2", cfg);
    CHECK(c.seed == cfg.seed);
}

TEST_CASE("every default target passes at a reduced sample budget") {
    RunConfig cfg;
    cfg.samples = 40;
    for (const auto& t : build_registry(false)) {
        const VerificationReport r = run_target(t, cfg);
        INFO(t.name, " residual ", r.max_rel_residual, " detail ", r.detail);
        CHECK(r.status == "pass");
    }
}

TEST_CASE("adversarial targets report fail, not a crash") {
    RunConfig cfg;
    cfg.samples = 40;
    cfg.adversarial = true;
    for (const char* n : {"adversarial/broken_pair", "adversarial/broken_inversion",
                          "adversarial/broken_summation"}) {
        const VerificationReport r = run_named(n, cfg);
        CHECK(r.status == "fail");
        CHECK(r.max_rel_residual > 1e-3);
    }
}

TEST_CASE("tolerance plumbing: an impossible --tol fails truncation-limited checks") {
    RunConfig cfg;
    cfg.samples = 40;
    cfg.tol = 1e-15;
    CHECK(run_named("series/jacobi_triple", cfg).status == "fail");
    // budgeted targets clamp the gate at their truncation floor instead
    cfg.tol = 1e-30;
    CHECK(run_named("pair/S4", cfg).status == "pass");
}

TEST_CASE("overrides flow through to targets") {
    RunConfig cfg;
    cfg.samples = 40;
    cfg.overrides["catalog.pair_C2.a"] = 0.41;
    CHECK(run_named("catalog/pair_C2", cfg).status == "pass");
}

TEST_CASE("json serialization") {
    RunConfig cfg;
    cfg.samples = 40;
    std::vector<VerificationReport> reports{run_named("pair/S1", cfg)};
    const std::string j = reports_to_json(reports);
    CHECK(j.find("\"schema\"") != std::string::npos);
    CHECK(j.find("\"reports\"") != std::string::npos);
    CHECK(j.find("pair/S1") != std::string::npos);
    CHECK(j.find("max_abs_residual") != std::string::npos);
    const std::string t = report_to_text(reports[0]);
    CHECK(t.find("pair/S1") != std::string::npos);
    CHECK(t.find("PASS") != std::string::npos);
}
