// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "benchmark/benchmark.h"

#include <random>

#include "homfs/correlation.hpp"
#include "homfs/dipfinder.hpp"
#include "homfs/geometry.hpp"
#include "homfs/permanent.hpp"
#include "homfs/random.hpp"

using namespace homfs;

namespace {

ComplexMatrix phase_matrix(std::size_t n) {
    std::mt19937_64 rng(7700 + n);
    return build_transfer_matrix(PhaseConfig(random_phases(n, rng)), NormConvention::unit())
        .matrix;
}

}  // namespace

static void permanent_naive_bench(benchmark::State& state) {
    const ComplexMatrix m = phase_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_naive(m).value);
    }
}
BENCHMARK(permanent_naive_bench)->DenseRange(4, 10, 2);

static void permanent_ryser_bench(benchmark::State& state) {
    const ComplexMatrix m = phase_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_ryser(m, 1).value);
    }
}
BENCHMARK(permanent_ryser_bench)->DenseRange(4, 20, 4);

static void permanent_ryser_threaded_bench(benchmark::State& state) {
    const ComplexMatrix m = phase_matrix(20);
    const unsigned threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_ryser(m, threads).value);
    }
}
BENCHMARK(permanent_ryser_threaded_bench)->Arg(1)->Arg(2)->Arg(4);

static void permanent_glynn_bench(benchmark::State& state) {
    const ComplexMatrix m = phase_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent_glynn(m, 1).value);
    }
}
BENCHMARK(permanent_glynn_bench)->DenseRange(4, 20, 4);

static void g3_grid_row_bench(benchmark::State& state) {
    // one 512-point row of the G3 landscape scan
    std::vector<double> phases{0.0, 0.0, 0.0};
    for (auto _ : state) {
        double acc = 0.0;
        for (int j = 0; j < 512; ++j) {
            phases[1] = 2.0 * std::numbers::pi * j / 512.0;
            acc += gN_permanent(PhaseConfig(phases), NormConvention::unit(), Algorithm::ryser)
                       .g_value;
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(g3_grid_row_bench);

static void full_state_expansion_bench(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(880 + n);
    const TransferMatrix tm = build_transfer_matrix(PhaseConfig(random_phases(n, rng)),
                                                    NormConvention::sqrt_modes());
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_state_expansion(tm).total_weight);
    }
}
BENCHMARK(full_state_expansion_bench)->DenseRange(2, 6, 1);

BENCHMARK_MAIN();
