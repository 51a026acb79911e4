// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file geometry.hpp
 * @brief Source/detector layouts, detector phase configurations and the
 *        transfer matrices built from them.
 *
 * N point sources sit equidistantly on the y-axis with spacing d; detector m
 * sits in the far field at angle theta_m off the x-axis. Each detector is
 * characterized by the phase difference between adjacent sources' paths,
 * dphi_m = k*d*sin(theta_m), and the source-to-detector amplitude is
 * c_norm*exp(-i*n*dphi_m) for source n = 1..N.
 */

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "homfs/matrix.hpp"

namespace homfs {

/// Physical layout: N sources with spacing d, wavenumber k, N detector angles.
class Geometry {
public:
    /// Validates: >= 2 detectors, d > 0, k > 0, finite angles within
    /// [-pi/2, pi/2] (closed fp endpoints; double(pi/2) < pi/2 exactly),
    /// pairwise distinct to 1e-9 rad.
    Geometry(double spacing_d, double wavenumber_k, std::vector<double> detector_angles);

    [[nodiscard]] std::size_t n_sources() const noexcept { return angles_.size(); }
    [[nodiscard]] double spacing_d() const noexcept { return d_; }
    [[nodiscard]] double wavenumber_k() const noexcept { return k_; }
    [[nodiscard]] const std::vector<double>& detector_angles() const noexcept { return angles_; }

private:
    double d_;
    double k_;
    std::vector<double> angles_;
};

/// Detector phase differences dphi_m, the coordinates of the interference
/// landscape. `physical` records that a Geometry witness produced them.
struct PhaseConfig {
    std::vector<double> deltas;
    bool physical = false;

    PhaseConfig() = default;
    explicit PhaseConfig(std::vector<double> deltas, bool physical = false);

    [[nodiscard]] std::size_t size() const noexcept { return deltas.size(); }
};

/// Overall scale c_norm of the transfer-matrix coefficients. The physical
/// value depends on emission details outside this model, so explicit
/// stand-in conventions are provided.
class NormConvention {
public:
    enum class Kind { unit, sqrt_modes, custom };

    [[nodiscard]] static NormConvention unit() noexcept { return NormConvention(Kind::unit, 1.0); }
    [[nodiscard]] static NormConvention sqrt_modes() noexcept {
        return NormConvention(Kind::sqrt_modes, 0.0);
    }
    [[nodiscard]] static NormConvention custom(double value);

    /// c_norm for an n-mode matrix: 1, 1/sqrt(n), or the custom scalar.
    [[nodiscard]] double factor(std::size_t n) const;
    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double custom_value() const noexcept { return value_; }
    [[nodiscard]] std::string name() const;

    [[nodiscard]] static NormConvention parse(const std::string& name);

    bool operator==(const NormConvention&) const = default;

private:
    NormConvention(Kind kind, double value) : kind_(kind), value_(value) {}
    Kind kind_;
    double value_;
};

/// N x N coefficient matrix c_nm; the object whose permanent is the
/// N-photon coincidence amplitude.
struct TransferMatrix {
    ComplexMatrix matrix;
    NormConvention norm = NormConvention::unit();

    [[nodiscard]] std::size_t dim() const noexcept { return matrix.dim(); }
};

/// dphi_m = k*d*sin(theta_m). Result is flagged physical.
[[nodiscard]] PhaseConfig phases_from_geometry(const Geometry& geom);

/// theta_m = asin(dphi_m/(k*d)). Throws std::domain_error naming the smallest
/// feasible k*d when some |dphi_m| > k*d.
[[nodiscard]] Geometry angles_from_phases(const PhaseConfig& phases, double wavenumber_k,
                                          double spacing_d);

/// Entry (n, m), n = 1..N: c_norm * exp(-i*n*dphi_m). Row index starts at 1
/// because the first source sits a distance d off the coordinate origin.
[[nodiscard]] TransferMatrix build_transfer_matrix(const PhaseConfig& phases,
                                                   NormConvention norm);

}  // namespace homfs
