// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "homfs/random.hpp"

#include <cmath>
#include <numbers>

namespace homfs {

std::vector<double> random_phases(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    std::vector<double> phases(n);
    for (auto& p : phases) p = dist(rng);
    return phases;
}

ComplexMatrix random_complex_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(n);
    for (auto& e : m.entries()) e = Complex{gauss(rng), gauss(rng)};
    return m;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix m = random_complex_matrix(n, rng);
    // Modified Gram-Schmidt on columns.
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex proj{0.0, 0.0};
            for (std::size_t r = 0; r < n; ++r) proj += std::conj(m(r, prev)) * m(r, c);
            for (std::size_t r = 0; r < n; ++r) m(r, c) -= proj * m(r, prev);
        }
        double norm2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm2 += std::norm(m(r, c));
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t r = 0; r < n; ++r) m(r, c) *= inv;
    }
    return m;
}

}  // namespace homfs
