// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

// Free-space N-photon Hong-Ou-Mandel interferometer CLI.
//
// Exit codes: 0 success, 1 usage error, 2 computation-limit error,
// 3 verification failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "homfs/permanent.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    homfs::cli::RunConfig cfg;
    std::string config_file;

    CLI::App app{"free-space N-photon Hong-Ou-Mandel interferometer simulator"};
    app.require_subcommand(0, 1);
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware default)");
    app.add_option("--seed", cfg.seed, "seed for property sweeps");
    app.add_option("--out", cfg.out, "output file or prefix (default stdout)");
    app.add_option("--format", cfg.format, "grid output format: csv, json or bin")
        ->check(CLI::IsMember({"csv", "json", "bin"}));
    app.add_option("--config", config_file, "run from a JSON RunConfig file");

    auto* g2 = app.add_subcommand("g2", "two-photon correlation, closed form vs permanent");
    auto* g2_dp1 = g2->add_option("dp1", cfg.dp1, "detector phase dphi_1 (rad)");
    auto* g2_dp2 = g2->add_option("dp2", cfg.dp2, "detector phase dphi_2 (rad)");
    g2->add_option("--sweep", cfg.sweep, "emit an R-point sweep of dphi_1 - dphi_2 over [0,2pi)");

    auto* gn = app.add_subcommand("gn", "N-photon coincidence correlation G^(N)");
    gn->add_option("--phases", cfg.phases, "comma-separated detector phases (rad)")
        ->delimiter(',');
    gn->add_option("--geometry", cfg.geometry_file, "JSON geometry file {n,d,k,angles}");
    gn->add_option("--canonical", cfg.canonical, "use the canonical N-photon dip phases");
    gn->add_option("--alg", cfg.alg, "permanent algorithm: naive, ryser, glynn")
        ->check(CLI::IsMember({"naive", "ryser", "glynn"}));
    gn->add_option("--norm", cfg.norm, "norm convention: unit, sqrt_modes, custom:<v>");

    auto* contour = app.add_subcommand("contour", "G^(N) grid scan plus zero-contour extraction");
    contour->add_option("--n", cfg.n, "photon number N");
    contour->add_option("--free", cfg.free1, "first free phase index (1-based)");
    contour->add_option("--free2", cfg.free2, "second free phase index (1-based)");
    contour->add_option("--fix", cfg.fix, "fix a phase, e.g. --fix 3=0 (repeatable)");
    contour->add_option("--res", cfg.resolution, "grid resolution R (R x R samples)");
    contour->add_option("--alg", cfg.alg, "permanent algorithm")
        ->check(CLI::IsMember({"naive", "ryser", "glynn"}));
    contour->add_option("--norm", cfg.norm, "norm convention");

    app.add_subcommand("bshom", "original beam-splitter HOM vs the free-space equivalent");

    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--n-max", cfg.n_max, "largest canonical dip to certify");
    verify->add_option("--inject-fault", cfg.inject_fault, "")->group("");

    auto* bench = app.add_subcommand("bench", "timing CSV for the permanent algorithms");
    bench->add_option("--n-min", cfg.bench_n_min, "smallest matrix dimension");
    bench->add_option("--n-max", cfg.bench_n_max, "largest matrix dimension");
    bench->add_option("--reps", cfg.bench_reps, "repetitions per measurement (median)");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (!config_file.empty()) {
            if (!app.get_subcommands().empty())
                throw std::invalid_argument("--config replaces the subcommand; give only one");
            return homfs::cli::run(homfs::cli::run_config_from_json(read_file(config_file)));
        }
        for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
        if (cfg.command.empty()) {
            std::cerr << app.help();
            return 1;
        }
        if (cfg.command == "g2" && cfg.sweep == 0 && (!*g2_dp1 || !*g2_dp2))
            throw std::invalid_argument("g2: give dp1 and dp2, or --sweep R");
        return homfs::cli::run(cfg);
    } catch (const homfs::DimensionLimitError& e) {
        std::cerr << "computation limit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
