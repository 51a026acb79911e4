// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "homfs/correlation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace homfs {

namespace {

constexpr std::size_t kExpansionDimLimit = 6;

}  // namespace

CorrelationResult make_correlation_result(Complex amplitude, std::size_t n, NormConvention norm,
                                          std::string algorithm) {
    return CorrelationResult{std::norm(amplitude), amplitude, n, norm, std::move(algorithm)};
}

unsigned OccupancyPattern::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0u);
}

OccupancyPattern OccupancyPattern::all_ones(std::size_t n) {
    return OccupancyPattern{std::vector<unsigned>(n, 1u)};
}

double OutputDistribution::weight(const OccupancyPattern& p) const {
    auto it = weights.find(p);
    return it == weights.end() ? 0.0 : it->second;
}

Complex OutputDistribution::amplitude(const OccupancyPattern& p) const {
    auto it = amplitudes.find(p);
    return it == amplitudes.end() ? Complex{0.0, 0.0} : it->second;
}

CorrelationResult g2_closed_form(double dp1, double dp2) {
    const Complex amplitude =
        std::polar(1.0, -(dp1 + 2.0 * dp2)) + std::polar(1.0, -(dp2 + 2.0 * dp1));
    return make_correlation_result(amplitude, 2, NormConvention::unit(), "closed_form");
}

CorrelationResult gN_permanent(const PhaseConfig& phases, NormConvention norm, Algorithm alg,
                               unsigned threads) {
    const TransferMatrix tm = build_transfer_matrix(phases, norm);
    const PermanentResult perm = permanent(tm.matrix, alg, threads);
    return make_correlation_result(perm.value, phases.size(), norm, algorithm_name(alg));
}

OutputDistribution beam_splitter_output(const OccupancyPattern& input) {
    if (input.counts != std::vector<unsigned>{1u, 1u})
        throw std::invalid_argument("beam_splitter_output: only the |1,1> input is supported");

    // Symmetric 50:50 splitter, rows input modes, columns output modes.
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix bs(2, {Complex{s, 0.0}, Complex{s, 0.0}, Complex{s, 0.0}, Complex{-s, 0.0}});
    return full_state_expansion(TransferMatrix{std::move(bs), NormConvention::custom(s)});
}

OutputDistribution full_state_expansion(const TransferMatrix& tm) {
    const std::size_t n = tm.dim();
    if (n > kExpansionDimLimit) {
        throw DimensionLimitError("full_state_expansion: dim " + std::to_string(n) +
                                      " exceeds limit " + std::to_string(kExpansionDimLimit),
                                  n, kExpansionDimLimit);
    }
    if (n == 0) throw std::invalid_argument("full_state_expansion: empty matrix");

    OutputDistribution dist;

    // Odometer over all N^N assignments of sources to output modes.
    std::vector<std::size_t> assign(n, 0);
    std::vector<unsigned> counts(n);
    for (;;) {
        Complex amplitude{1.0, 0.0};
        for (std::size_t src = 0; src < n; ++src) amplitude *= tm.matrix(src, assign[src]);

        std::fill(counts.begin(), counts.end(), 0u);
        for (std::size_t src = 0; src < n; ++src) ++counts[assign[src]];
        dist.amplitudes[OccupancyPattern{counts}] += amplitude;

        std::size_t pos = 0;
        while (pos < n && ++assign[pos] == n) assign[pos++] = 0;
        if (pos == n) break;
    }

    // Repeated creation operators: b+^k|0> has norm sqrt(k!), so the pattern
    // weight is |amplitude|^2 * prod_j counts_j!.
    for (const auto& [pattern, amplitude] : dist.amplitudes) {
        double boson_factor = 1.0;
        for (unsigned c : pattern.counts) boson_factor *= factorial(c);
        const double w = std::norm(amplitude) * boson_factor;
        dist.weights[pattern] = w;
        dist.total_weight += w;
    }
    return dist;
}

CoincidenceCheckReport check_coincidence_amplitude(const TransferMatrix& tm, unsigned threads) {
    const OutputDistribution dist = full_state_expansion(tm);
    const Complex expansion = dist.amplitude(OccupancyPattern::all_ones(tm.dim()));
    const Complex perm = permanent_ryser(tm.matrix, threads).value;
    const double discrepancy = std::abs(expansion - perm);
    const double tolerance = 1e-10 * std::max(1.0, std::abs(perm));
    return CoincidenceCheckReport{discrepancy <= tolerance, expansion, perm, discrepancy,
                                  tolerance};
}

}  // namespace homfs
