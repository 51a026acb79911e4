// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file matrix.hpp
 * @brief Dense square complex matrix value type shared by all modules.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace homfs {

using Complex = std::complex<double>;

/// Dense N x N complex matrix, row-major storage, value semantics.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim)
        : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}) {
        if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    }

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
        if (entries_.size() != dim * dim)
            throw std::invalid_argument("ComplexMatrix: entry count does not match dim*dim");
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    [[nodiscard]] Complex& operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    [[nodiscard]] const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    [[nodiscard]] const std::vector<Complex>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::vector<Complex>& entries() noexcept { return entries_; }

    [[nodiscard]] static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = Complex{1.0, 0.0};
        return m;
    }

    [[nodiscard]] static ComplexMatrix constant(std::size_t dim, Complex value) {
        ComplexMatrix m(dim);
        for (auto& e : m.entries_) e = value;
        return m;
    }

    [[nodiscard]] bool all_finite() const noexcept {
        for (const auto& e : entries_) {
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
        }
        return true;
    }

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// n! as a double. Exact through n = 22; relative error ~1e-15 beyond.
[[nodiscard]] inline double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

}  // namespace homfs
