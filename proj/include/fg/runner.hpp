#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fg/core.hpp"

namespace fg {

struct RunConfig {
    std::uint64_t seed = 0x5eedf00dULL;
    int samples = 1000;
    double tol = 1e-9;
    Truncation truncation;
    int window = 6;
    std::map<std::string, double> overrides;  // "catalog.<name>.<param>" etc.
    bool adversarial = false;  // also register the deliberately-broken targets
};

struct VerificationReport {
    std::string name;
    std::string status = "skipped";  // pass | fail | skipped
    double max_abs_residual = 0.0;
    double max_rel_residual = 0.0;
    int samples_run = 0;
    int rejections = 0;
    std::uint64_t seed = 0;
    long long elapsed_ms = 0;
    std::string detail;  // worst-case input record, empty when not useful
};

struct Target {
    std::string name;
    std::string description;
    // tolerance floor for truncation-limited checks; the effective tolerance
    // is max(cfg.tol, budget) so a looser --tol never tightens the gate below
    // what the truncation can deliver
    double budget = 0.0;
    std::function<VerificationReport(const RunConfig&)> run;
};

// Every registered verification, ordered by name. The adversarial targets
// (broken pair / inversion / summation) are included only when requested;
// they are expected to report fail.
std::vector<Target> build_registry(bool adversarial);

// Dispatch with timing and structured-error capture; never throws for
// evaluation failures (they become status=fail with the message in detail).
VerificationReport run_target(const Target& t, const RunConfig& cfg);

// Lookup + run; throws UnknownTarget.
VerificationReport run_named(const std::string& name, const RunConfig& cfg);

// JSON serialization ({"schema":1, "reports":[...]}).
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string report_to_text(const VerificationReport& r);

}  // namespace fg
