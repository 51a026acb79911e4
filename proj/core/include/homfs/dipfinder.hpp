// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dipfinder.hpp
 * @brief Locating and certifying completely destructive interference
 *        configurations (N-photon Hong-Ou-Mandel dips).
 *
 * canonical_dip returns the closed-form zero configuration
 * dphi_1 = 2*pi/N, dphi_m = 2*pi*m (m != 1); verify_dip certifies any phase
 * configuration by its normalized residual |perm|/N!; scan_grid and
 * extract_contour map the zero manifold over two free phases; refine_dip
 * polishes a near-zero onto the manifold by derivative-free minimization.
 */

#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

#include "homfs/correlation.hpp"
#include "homfs/geometry.hpp"
#include "homfs/permanent.hpp"

namespace homfs {

/// A configuration counts as a dip when |perm|/N! falls below this.
/// N! bounds |perm| for unit-modulus entries, so the measure is scale-free.
inline constexpr double kDipResidualThreshold = 1e-9;

struct DipCertificate {
    PhaseConfig phases;
    double normalized_residual;  // |perm| / N! for the unit-norm matrix
    bool verified;               // normalized_residual <= kDipResidualThreshold
    std::size_t n;
};

/// The closed-form solution: dphi_1 = 2*pi/n, dphi_m = 2*pi*m for m != 1.
[[nodiscard]] PhaseConfig canonical_dip(std::size_t n);

/// Evaluates |perm| of the unit-norm transfer matrix and certifies the
/// normalized residual against kDipResidualThreshold.
[[nodiscard]] DipCertificate verify_dip(const PhaseConfig& phases,
                                        Algorithm alg = Algorithm::ryser, unsigned threads = 0);

struct GridSpec {
    std::size_t resolution = 512;          // R x R samples, R >= 2, R*R <= 1e8
    double lo = 0.0;
    double hi = 2.0 * std::numbers::pi;    // half-open [lo, hi) on both axes
};

/// Dense G^(N) evaluation over two free phases with the rest held fixed.
/// Row-major: g[i*R + j] is G at (free1 = axis_value(i), free2 = axis_value(j)).
struct GridScan {
    std::vector<double> base_phases;
    std::size_t free1 = 0;
    std::size_t free2 = 1;
    std::size_t resolution = 0;
    double lo = 0.0;
    double hi = 0.0;
    Algorithm algorithm = Algorithm::ryser;
    NormConvention norm = NormConvention::unit();
    std::vector<double> g;

    [[nodiscard]] double axis_value(std::size_t idx) const {
        return lo + (hi - lo) * static_cast<double>(idx) / static_cast<double>(resolution);
    }
    [[nodiscard]] double value(std::size_t i, std::size_t j) const {
        return g[i * resolution + j];
    }
    /// Direct G evaluation at arbitrary free-phase values (not grid lookup).
    [[nodiscard]] double eval(double x, double y) const;
    /// Theoretical maximum (N! * c_norm^N)^2, the G normalization scale.
    [[nodiscard]] double g_scale() const;
};

[[nodiscard]] GridScan scan_grid(const std::vector<double>& base_phases, std::size_t free1,
                                 std::size_t free2, const GridSpec& spec,
                                 Algorithm alg = Algorithm::ryser,
                                 NormConvention norm = NormConvention::unit(),
                                 unsigned threads = 0);

/// Zero-level polyline segments in the (free1, free2) plane. Every emitted
/// vertex has been re-evaluated directly and satisfies G <= g_threshold.
struct ContourSet {
    std::vector<std::vector<std::array<double, 2>>> polylines;
    double g_threshold = 0.0;      // certification level on G
    double marching_level = 0.0;   // cell-classification level actually marched
    std::size_t dropped_vertices = 0;

    std::vector<double> base_phases;
    std::size_t free1 = 0;
    std::size_t free2 = 1;
    std::size_t resolution = 0;
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool empty() const { return polylines.empty(); }
    [[nodiscard]] std::size_t vertex_count() const;
};

/// Marching squares over the grid (saddle cells resolved by a cell-center
/// sample), then each crossing is pulled onto the zero manifold by a local
/// derivative-free descent and certified at G <= 1e-9 * g_scale. Vertices
/// failing certification are dropped and counted. marching_level <= 0 picks
/// 1e-3 * g_scale.
[[nodiscard]] ContourSet extract_contour(const GridScan& grid, double marching_level = 0.0);

/// Nelder-Mead minimization of the normalized G over the free phases,
/// starting at `start`. Returns the certificate at the refined point; an
/// unconverged search is flagged by verified = false. Never returns a point
/// worse than the start.
[[nodiscard]] DipCertificate refine_dip(const PhaseConfig& start,
                                        const std::vector<std::size_t>& free_indices,
                                        Algorithm alg = Algorithm::ryser,
                                        std::size_t max_iterations = 2000);

}  // namespace homfs
