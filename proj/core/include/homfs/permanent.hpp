// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file permanent.hpp
 * @brief Exact permanent evaluation for complex square matrices.
 *
 * Three algorithms with different cost/trust levels:
 *   - naive: literal sum over all N! permutations, O(N!*N). The oracle.
 *   - ryser: inclusion-exclusion over column subsets, O(2^N*N) with
 *     Gray-code incremental row sums.
 *   - glynn: +/-1 outer-product formula, 2^(N-1) terms, O(2^N*N) with
 *     Gray-code incremental column sums.
 *
 * ryser and glynn partition the Gray-code index space into contiguous
 * segments evaluated on worker threads; each segment starts from a
 * directly computed state and partial sums are combined in segment
 * order, so a fixed thread count gives bitwise-stable results and
 * different thread counts agree to ~1e-15 relative.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "homfs/matrix.hpp"

namespace homfs {

/// Thrown when a matrix dimension exceeds the algorithm's validated limit.
class DimensionLimitError : public std::runtime_error {
public:
    DimensionLimitError(const std::string& what, std::size_t dim, std::size_t limit)
        : std::runtime_error(what), dim(dim), limit(limit) {}
    std::size_t dim;
    std::size_t limit;
};

enum class Algorithm { naive, ryser, glynn };

[[nodiscard]] std::string algorithm_name(Algorithm alg);
[[nodiscard]] Algorithm parse_algorithm(const std::string& name);

/// Hard dimension cutoffs, checked before any work starts.
inline constexpr std::size_t kNaiveDimLimit = 10;
inline constexpr std::size_t kFastDimLimit = 30;

struct PermanentResult {
    Complex value;
    Algorithm algorithm;
    std::size_t dim;
};

/// Literal permutation sum. dim <= 10.
[[nodiscard]] PermanentResult permanent_naive(const ComplexMatrix& m);

/// Ryser inclusion-exclusion with Gray-code updates. dim <= 30.
/// threads = 0 picks a hardware-based default; 1 forces serial.
[[nodiscard]] PermanentResult permanent_ryser(const ComplexMatrix& m, unsigned threads = 0);

/// Glynn +/-1 formula with Gray-code updates. dim <= 30.
[[nodiscard]] PermanentResult permanent_glynn(const ComplexMatrix& m, unsigned threads = 0);

[[nodiscard]] PermanentResult permanent(const ComplexMatrix& m, Algorithm alg,
                                        unsigned threads = 0);

}  // namespace homfs
