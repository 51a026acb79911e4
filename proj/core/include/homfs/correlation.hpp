// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file correlation.hpp
 * @brief Coincidence correlation functions.
 *
 * The coincident N-th order correlation G^(N) is |perm(C)|^2 of the transfer
 * matrix C. Alongside the permanent route this module provides the two-photon
 * closed form, the beam-splitter baseline, and a full bosonic output-state
 * expansion that serves as an independent physical oracle.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "homfs/geometry.hpp"
#include "homfs/permanent.hpp"

namespace homfs {

/// Scalar G value together with the pre-squared amplitude it came from.
/// g_value is always norm(amplitude), so the pair stays consistent.
struct CorrelationResult {
    double g_value;
    Complex amplitude;
    std::size_t n;
    NormConvention norm = NormConvention::unit();
    std::string algorithm;  // provenance: closed_form | naive | ryser | glynn
};

[[nodiscard]] CorrelationResult make_correlation_result(Complex amplitude, std::size_t n,
                                                        NormConvention norm,
                                                        std::string algorithm);

/// Photon counts per output mode. The all-ones pattern is the coincidence event.
struct OccupancyPattern {
    std::vector<unsigned> counts;

    auto operator<=>(const OccupancyPattern&) const = default;

    [[nodiscard]] unsigned total() const;
    [[nodiscard]] static OccupancyPattern all_ones(std::size_t n);
};

/// Probability weight per occupancy pattern plus the raw (pre-normalization)
/// coherent amplitude each pattern accumulated. For a unitary matrix the
/// weights sum to 1; for restricted N-detector submatrices the sum is
/// reported as-is, never renormalized.
struct OutputDistribution {
    std::map<OccupancyPattern, double> weights;
    std::map<OccupancyPattern, Complex> amplitudes;
    double total_weight = 0.0;

    [[nodiscard]] double weight(const OccupancyPattern& p) const;
    [[nodiscard]] Complex amplitude(const OccupancyPattern& p) const;
};

/// Two-photon closed form: G = 2*(1 + cos(dp1 - dp2)), from the amplitude
/// exp(-i(dp1 + 2*dp2)) + exp(-i(dp2 + 2*dp1)).
[[nodiscard]] CorrelationResult g2_closed_form(double dp1, double dp2);

/// G^(N) = |perm(C)|^2 for the transfer matrix built from `phases`.
[[nodiscard]] CorrelationResult gN_permanent(const PhaseConfig& phases, NormConvention norm,
                                             Algorithm alg, unsigned threads = 0);

/// The original 50:50 beam-splitter experiment: |1,1> in, {1/2, 1/2, 0} out.
/// Only the |1,1> input is supported.
[[nodiscard]] OutputDistribution beam_splitter_output(const OccupancyPattern& input);

/// Literal bosonic expansion of prod_n (sum_m c_nm b+_m)|0>: every one of the
/// N^N source-to-mode assignments contributes its amplitude to an occupancy
/// pattern; weight(pattern) = |amplitude|^2 * prod_j counts_j!. dim <= 6.
[[nodiscard]] OutputDistribution full_state_expansion(const TransferMatrix& tm);

struct CoincidenceCheckReport {
    bool pass;
    Complex expansion_amplitude;
    Complex permanent_value;
    double discrepancy;
    double tolerance;
};

/// Asserts that the expansion's all-ones amplitude equals perm(C) to
/// 1e-10 * max(1, |perm|). dim <= 6.
[[nodiscard]] CoincidenceCheckReport check_coincidence_amplitude(const TransferMatrix& tm,
                                                                 unsigned threads = 0);

}  // namespace homfs
