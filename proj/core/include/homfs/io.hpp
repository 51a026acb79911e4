// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief Serialization: JSON for the domain types, CSV and raw float64
 *        (little-endian, row-major, with a JSON sidecar) for grids.
 *
 * All floating-point text output round-trips doubles exactly, so a rerun
 * with the same configuration produces byte-identical files.
 */

#pragma once

#include <filesystem>
#include <string>

#include "homfs/correlation.hpp"
#include "homfs/dipfinder.hpp"
#include "homfs/geometry.hpp"

namespace homfs {

/// 17-significant-digit representation (round-trip exact for double).
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string to_json(const Geometry& geom);
[[nodiscard]] std::string to_json(const PhaseConfig& phases);
[[nodiscard]] std::string to_json(const CorrelationResult& result);
[[nodiscard]] std::string to_json(const OutputDistribution& dist);
[[nodiscard]] std::string to_json(const DipCertificate& cert);
[[nodiscard]] std::string to_json(const ContourSet& contour);

/// Parses {"n": N, "d": ..., "k": ..., "angles": [...]}.
[[nodiscard]] Geometry geometry_from_json(const std::string& text);
/// Parses {"deltas": [...], "physical": bool}.
[[nodiscard]] PhaseConfig phase_config_from_json(const std::string& text);

/// CSV rows dp1,dp2,g in grid row-major order.
void write_grid_csv(const std::filesystem::path& path, const GridScan& grid);

/// Writes <prefix>.f64 (row-major float64, little-endian) plus
/// <prefix>.json sidecar describing dimensions and the scan configuration.
void write_grid_binary(const std::filesystem::path& prefix, const GridScan& grid);

/// Reads a grid written by write_grid_binary.
[[nodiscard]] GridScan read_grid_binary(const std::filesystem::path& prefix);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace homfs
