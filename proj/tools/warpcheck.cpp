#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "warpcheck/run.hpp"

using warpcheck::cli::Format;
using warpcheck::cli::RunConfig;

namespace {

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return Format::Text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"warpcheck: leaf geometry and curvature claims for multiply "
                 "warped product metrics"};
    app.require_subcommand(1);
    app.fallthrough(); // accept global flags after the subcommand name

    RunConfig cfg;
    std::string format = "text";

    app.add_option("--format", format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--order", cfg.jet_order, "jet truncation order (>= 12)");
    app.add_option("--grid", cfg.grid_points, "grid density (>= 101)");
    app.add_option("--tol", cfg.tol, "tolerance override");
    app.add_option("--seed", cfg.seed, "random seed");

    auto* report = app.add_subcommand(
        "report", "leaf geometry table and identity residuals for a metric file");
    report->add_option("metric", cfg.input_path, "metric TOML file")->required();

    auto* verify = app.add_subcommand(
        "verify-paper", "check every catalog claim (exact jets + sign grids)");
    verify->add_option("--only", cfg.only, "restrict to entries matching this name");
    verify->add_option("--n", cfg.n, "ambient dimension for --only case builds");
    verify->add_option("--k", cfg.k, "exponent k for --only torus/intro builds");
    verify->add_option("--m", cfg.m, "exponent m for --only perturbed torus builds");
    verify->add_flag("--inject-failure", cfg.inject_failure,
                     "test mode: corrupt one expected value to exercise the FAIL path");

    auto* chain = app.add_subcommand("chain-check",
                                     "evaluate the stability chain on a scenario file");
    chain->add_option("scenario", cfg.input_path, "scenario JSON file")->required();

    auto* gron = app.add_subcommand("gronwall",
                                    "residuals and verdict for sampled inequality data");
    gron->add_option("data", cfg.input_path, "gronwall JSON file")->required();

    auto* ymin = app.add_subcommand("yamabe-min",
                                    "minimize the conformal quotient on a periodic grid");
    ymin->add_option("--grid", cfg.yamabe_grid, "cells per axis (default 16)");
    ymin->add_option("--background", cfg.yamabe_background,
                     "constant background scalar curvature");
    ymin->add_option("--volume", cfg.yamabe_volume, "total torus volume");
    ymin->add_option("--csv", cfg.csv_dump, "dump the minimizing field to this CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return warpcheck::cli::kExitInputError;
    }
    cfg.format = parse_format(format);

    if (report->parsed()) return warpcheck::cli::run_report(cfg, std::cout, std::cerr);
    if (verify->parsed()) return warpcheck::cli::run_verify_paper(cfg, std::cout, std::cerr);
    if (chain->parsed()) return warpcheck::cli::run_chain_check(cfg, std::cout, std::cerr);
    if (gron->parsed()) return warpcheck::cli::run_gronwall(cfg, std::cout, std::cerr);
    if (ymin->parsed()) return warpcheck::cli::run_yamabe_min(cfg, std::cout, std::cerr);
    return warpcheck::cli::kExitInputError;
}
