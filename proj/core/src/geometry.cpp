// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "homfs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace homfs {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Detectors closer than this in angle count as one physical detector.
constexpr double kAngleDistinctTol = 1e-9;

void require_finite(const std::vector<double>& values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
}

}  // namespace

Geometry::Geometry(double spacing_d, double wavenumber_k, std::vector<double> detector_angles)
    : d_(spacing_d), k_(wavenumber_k), angles_(std::move(detector_angles)) {
    if (angles_.size() < 2) throw std::invalid_argument("Geometry: need at least 2 detectors");
    if (!std::isfinite(d_) || d_ <= 0.0) throw std::invalid_argument("Geometry: spacing_d must be > 0");
    if (!std::isfinite(k_) || k_ <= 0.0)
        throw std::invalid_argument("Geometry: wavenumber_k must be > 0");
    require_finite(angles_, "Geometry: detector_angles");
    for (double a : angles_) {
        if (std::abs(a) > kHalfPi)
            throw std::invalid_argument("Geometry: detector angle outside (-pi/2, pi/2)");
    }
    for (std::size_t i = 0; i < angles_.size(); ++i) {
        for (std::size_t j = i + 1; j < angles_.size(); ++j) {
            if (std::abs(angles_[i] - angles_[j]) < kAngleDistinctTol)
                throw std::invalid_argument("Geometry: duplicate detector angles");
        }
    }
}

PhaseConfig::PhaseConfig(std::vector<double> deltas_in, bool physical_in)
    : deltas(std::move(deltas_in)), physical(physical_in) {
    if (deltas.size() < 2) throw std::invalid_argument("PhaseConfig: need at least 2 phases");
    require_finite(deltas, "PhaseConfig: deltas");
}

NormConvention NormConvention::custom(double value) {
    if (!std::isfinite(value) || value <= 0.0)
        throw std::invalid_argument("NormConvention: custom c_norm must be finite and > 0");
    return NormConvention(Kind::custom, value);
}

double NormConvention::factor(std::size_t n) const {
    switch (kind_) {
        case Kind::unit: return 1.0;
        case Kind::sqrt_modes: return 1.0 / std::sqrt(static_cast<double>(n));
        case Kind::custom: return value_;
    }
    return 1.0;
}

std::string NormConvention::name() const {
    switch (kind_) {
        case Kind::unit: return "unit";
        case Kind::sqrt_modes: return "sqrt_modes";
        case Kind::custom: {
            std::ostringstream os;
            os << "custom:" << value_;
            return os.str();
        }
    }
    return "unit";
}

NormConvention NormConvention::parse(const std::string& name) {
    if (name == "unit") return unit();
    if (name == "sqrt_modes") return sqrt_modes();
    if (name.rfind("custom:", 0) == 0) return custom(std::stod(name.substr(7)));
    throw std::invalid_argument("unknown norm convention: " + name);
}

PhaseConfig phases_from_geometry(const Geometry& geom) {
    const double kd = geom.wavenumber_k() * geom.spacing_d();
    std::vector<double> deltas;
    deltas.reserve(geom.n_sources());
    for (double theta : geom.detector_angles()) deltas.push_back(kd * std::sin(theta));
    return PhaseConfig(std::move(deltas), /*physical=*/true);
}

Geometry angles_from_phases(const PhaseConfig& phases, double wavenumber_k, double spacing_d) {
    if (!std::isfinite(wavenumber_k) || wavenumber_k <= 0.0 || !std::isfinite(spacing_d) ||
        spacing_d <= 0.0) {
        throw std::invalid_argument("angles_from_phases: k and d must be finite and > 0");
    }
    const double kd = wavenumber_k * spacing_d;
    double max_abs = 0.0;
    for (double dp : phases.deltas) max_abs = std::max(max_abs, std::abs(dp));
    if (max_abs > kd) {
        std::ostringstream os;
        os << "angles_from_phases: infeasible, |dphi| up to " << max_abs << " exceeds k*d = " << kd
           << "; smallest feasible k*d is " << max_abs;
        throw std::domain_error(os.str());
    }
    std::vector<double> angles;
    angles.reserve(phases.size());
    for (double dp : phases.deltas) angles.push_back(std::asin(dp / kd));
    return Geometry(spacing_d, wavenumber_k, std::move(angles));
}

TransferMatrix build_transfer_matrix(const PhaseConfig& phases, NormConvention norm) {
    const std::size_t n = phases.size();
    const double c_norm = norm.factor(n);
    ComplexMatrix m(n);
    for (std::size_t row = 0; row < n; ++row) {
        const double source_index = static_cast<double>(row + 1);
        for (std::size_t col = 0; col < n; ++col) {
            m(row, col) = std::polar(c_norm, -source_index * phases.deltas[col]);
        }
    }
    return TransferMatrix{std::move(m), norm};
}

}  // namespace homfs
