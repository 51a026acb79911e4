// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/// @file random.hpp
/// @brief Seeded generators for property sweeps: phase configurations,
///        complex Ginibre matrices and Haar-like random unitaries.

#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "homfs/matrix.hpp"

namespace homfs {

/// n phases uniform in [0, 2*pi).
[[nodiscard]] std::vector<double> random_phases(std::size_t n, std::mt19937_64& rng);

/// Entries iid standard complex Gaussian.
[[nodiscard]] ComplexMatrix random_complex_matrix(std::size_t n, std::mt19937_64& rng);

/// Ginibre matrix orthonormalized by modified Gram-Schmidt.
[[nodiscard]] ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

}  // namespace homfs
