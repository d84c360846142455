#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "warpcheck/gronwall.hpp"
#include "warpcheck/varcheck.hpp"

namespace warpcheck::cli {

enum class Format { Text, Json, Csv };

/// Exit codes shared by all subcommands.
enum ExitCode { kExitPass = 0, kExitVerificationFailure = 1, kExitInputError = 2 };

struct RunConfig {
    std::string input_path;
    Format format = Format::Text;
    int grid_points = 1001;
    int jet_order = 16;
    std::uint64_t seed = 20240817;
    double tol = 0.0; // 0: per-command default (1e-10 report, 1e-8 gronwall)
    std::string only; // verify-paper entry filter
    int n = 0, k = 0, m = 0;
    bool inject_failure = false; // test mode: corrupt one expected value

    // yamabe-min
    int yamabe_grid = 16;
    double yamabe_background = 0.0;
    double yamabe_volume = 1.0;
    std::string csv_dump;

    void validate() const; // throws InvalidParams
};

int run_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify_paper(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_chain_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_gronwall(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_yamabe_min(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// JSON loaders for the chain-check and gronwall input formats, exposed for
// tests. Throw ParseError on malformed documents.
varcheck::Scenario parse_scenario_json(const std::string& text);
gronwall::GronwallData parse_gronwall_json(const std::string& text);

} // namespace warpcheck::cli
