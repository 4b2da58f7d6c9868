// fgv: run the verification suite for the (f,g) pair/inversion/summation
// machinery from the command line.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fg/runner.hpp"

namespace {

int parse_overrides(const std::vector<std::string>& kvs,
                    std::map<std::string, double>& out) {
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "fgv: bad --set argument (want key=value): " << kv
                      << "\n";
            return 2;
        }
        try {
            out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "fgv: bad --set value in: " << kv << "\n";
            return 2;
        }
    }
    return 0;
}

int emit(const std::vector<fg::VerificationReport>& reports, bool json,
         const std::string& out_path) {
    std::string text;
    if (json) {
        text = fg::reports_to_json(reports);
    } else {
        for (const auto& r : reports) text += fg::report_to_text(r) + "\n";
    }
    if (out_path.empty()) {
        std::cout << text;
        if (json) std::cout << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "fgv: cannot open " << out_path << "\n";
            return 2;
        }
        os << text;
        if (json) os << "\n";
    }
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.status == "pass";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of (f,g)-inversion and summation identities"};
    app.set_config("--config");
    app.fallthrough();  // allow global flags after the subcommand

    fg::RunConfig cfg;
    if (const char* env_seed = std::getenv("FG_SEED"))
        cfg.seed = std::strtoull(env_seed, nullptr, 10);

    std::vector<std::string> set_args;
    std::string out_path;
    bool json = false, text = false;
    app.add_option("--seed", cfg.seed, "RNG seed (FG_SEED overrides the default)");
    app.add_option("--samples", cfg.samples, "samples per randomized check")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "relative tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--trunc-products", cfg.truncation.product_terms,
                   "factors kept in infinite products")
        ->check(CLI::PositiveNumber);
    app.add_option("--trunc-series", cfg.truncation.series_terms,
                   "symmetric term range for bilateral sums")
        ->check(CLI::PositiveNumber);
    app.add_option("--window", cfg.window, "coefficient window half-width")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--set", set_args, "parameter override, key=value (repeatable)");
    app.add_flag("--json", json, "JSON report output");
    app.add_flag("--text", text, "plain text report output (default)");
    app.add_flag("--adversarial", cfg.adversarial,
                 "also register the deliberately-broken targets");

    auto* list_cmd = app.add_subcommand("list", "list all verification targets");
    auto* verify_cmd =
        app.add_subcommand("verify", "run one verification target by name");
    std::string target;
    verify_cmd->add_option("target", target, "registry name (full or bare)")
        ->required();
    auto* suite_cmd = app.add_subcommand("suite", "run every registered target");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // config errors are exit code 2
    }
    if (json && text) {
        std::cerr << "fgv: --json and --text are mutually exclusive\n";
        return 2;
    }
    if (parse_overrides(set_args, cfg.overrides) != 0) return 2;
    try {
        cfg.truncation.validate();
    } catch (const std::exception& e) {
        std::cerr << "fgv: " << e.what() << "\n";
        return 2;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& t : fg::build_registry(cfg.adversarial))
                std::cout << t.name << "  -  " << t.description << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            const fg::VerificationReport r = fg::run_named(target, cfg);
            return emit({r}, json, out_path);
        }
        if (suite_cmd->parsed()) {
            std::vector<fg::VerificationReport> reports;
            for (const auto& t : fg::build_registry(cfg.adversarial))
                reports.push_back(fg::run_target(t, cfg));
            return emit(reports, json, out_path);
        }
    } catch (const fg::UnknownTarget& e) {
        std::cerr << "fgv: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fgv: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
