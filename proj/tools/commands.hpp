// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/// @file commands.hpp
/// @brief CLI command implementations over the core library.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace homfs::cli {

/// Everything a run needs; a run is reproducible from this alone.
struct RunConfig {
    std::string command;

    // global
    unsigned threads = 0;           // 0 = hardware default
    std::uint64_t seed = 20260808;  // property-sweep seed
    std::string out;                // output file/prefix; empty = stdout
    std::string format = "csv";     // csv | json | bin (grid emission)

    // g2
    double dp1 = 0.0;
    double dp2 = 0.0;
    std::size_t sweep = 0;          // 0 = single evaluation

    // gn
    std::vector<double> phases;
    std::string geometry_file;
    std::size_t canonical = 0;      // 0 = not used
    std::string alg = "ryser";
    std::string norm = "unit";

    // contour
    std::size_t n = 3;
    std::size_t free1 = 1;          // 1-based phase indices
    std::size_t free2 = 2;
    std::vector<std::string> fix;   // "index=value", 1-based
    std::size_t resolution = 512;

    // verify
    std::size_t n_max = 14;
    std::string inject_fault;       // test hook: "ryser-sign"

    // bench
    std::size_t bench_n_min = 2;
    std::size_t bench_n_max = 12;
    std::size_t bench_reps = 3;
};

[[nodiscard]] std::string run_config_to_json(const RunConfig& cfg);
[[nodiscard]] RunConfig run_config_from_json(const std::string& text);

int run_g2(const RunConfig& cfg);
int run_gn(const RunConfig& cfg);
int run_contour(const RunConfig& cfg);
int run_bshom(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_bench(const RunConfig& cfg);

/// Dispatch on cfg.command. Returns the process exit code.
int run(const RunConfig& cfg);

}  // namespace homfs::cli
