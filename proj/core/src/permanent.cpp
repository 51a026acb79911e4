// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "homfs/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

namespace homfs {

namespace {

// Accumulation runs in 80-bit extended precision. The fast algorithms
// cancel terms as large as (N-1)^N down to results of order N! or below;
// double accumulators leave only ~1 digit of headroom at N = 14 against
// the 1e-9 normalized-residual budget, extended precision leaves ~4.
using Acc = std::complex<long double>;

[[nodiscard]] std::uint64_t gray(std::uint64_t i) noexcept { return i ^ (i >> 1); }

void check_dim(const ComplexMatrix& m, std::size_t limit, const char* alg) {
    if (m.dim() > limit) {
        throw DimensionLimitError(std::string(alg) + ": dim " + std::to_string(m.dim()) +
                                      " exceeds limit " + std::to_string(limit),
                                  m.dim(), limit);
    }
    if (!m.all_finite()) throw std::invalid_argument(std::string(alg) + ": non-finite entries");
}

unsigned pick_threads(unsigned requested, std::uint64_t span) {
    // hardware_concurrency reads sysfs on glibc; cache it.
    static const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned t = requested == 0 ? hw : requested;
    // A segment shorter than ~4k steps is not worth a thread.
    const std::uint64_t max_useful = std::max<std::uint64_t>(1, span / 4096);
    return static_cast<unsigned>(std::min<std::uint64_t>(t, max_useful));
}

// One contiguous Gray-code segment of the Ryser sum: subset indices
// i in [begin, end), subset S = gray(i), term = (-1)^i * prod_n rowsum_n(S).
Acc ryser_segment(const std::vector<Complex>& cols_major, std::size_t n,
                  std::uint64_t begin, std::uint64_t end) {
    std::vector<Acc> rowsums(n, Acc{0.0L, 0.0L});
    std::uint64_t g = gray(begin);
    for (std::size_t c = 0; c < n; ++c) {
        if ((g >> c) & 1u) {
            const Complex* col = cols_major.data() + c * n;
            for (std::size_t r = 0; r < n; ++r) rowsums[r] += col[r];
        }
    }

    auto product = [&]() {
        Acc p{1.0L, 0.0L};
        for (std::size_t r = 0; r < n; ++r) p *= rowsums[r];
        return p;
    };

    Acc sum = (begin & 1u) ? -product() : product();
    for (std::uint64_t i = begin + 1; i < end; ++i) {
        const unsigned k = static_cast<unsigned>(std::countr_zero(i));
        g ^= (std::uint64_t{1} << k);
        const Complex* col = cols_major.data() + static_cast<std::size_t>(k) * n;
        if ((g >> k) & 1u) {
            for (std::size_t r = 0; r < n; ++r) rowsums[r] += col[r];
        } else {
            for (std::size_t r = 0; r < n; ++r) rowsums[r] -= col[r];
        }
        sum += (i & 1u) ? -product() : product();
    }
    return sum;
}

// One contiguous segment of the Glynn sum: delta indices g in [begin, end),
// delta_0 = +1, delta_r = -1 iff bit (r-1) of gray(g) is set,
// term = (-1)^g * prod_m colsum_m(delta).
Acc glynn_segment(const ComplexMatrix& m, std::uint64_t begin, std::uint64_t end) {
    const std::size_t n = m.dim();
    std::vector<Acc> colsums(n, Acc{0.0L, 0.0L});
    const std::uint64_t g0 = gray(begin);
    for (std::size_t r = 0; r < n; ++r) {
        const long double sign = (r > 0 && ((g0 >> (r - 1)) & 1u)) ? -1.0L : 1.0L;
        for (std::size_t c = 0; c < n; ++c) {
            colsums[c] += sign * Acc{m(r, c).real(), m(r, c).imag()};
        }
    }

    auto product = [&]() {
        Acc p{1.0L, 0.0L};
        for (std::size_t c = 0; c < n; ++c) p *= colsums[c];
        return p;
    };

    std::uint64_t grayv = g0;
    Acc sum = (begin & 1u) ? -product() : product();
    for (std::uint64_t i = begin + 1; i < end; ++i) {
        const unsigned k = static_cast<unsigned>(std::countr_zero(i));
        grayv ^= (std::uint64_t{1} << k);
        const std::size_t row = static_cast<std::size_t>(k) + 1;
        const long double step = ((grayv >> k) & 1u) ? -2.0L : 2.0L;
        for (std::size_t c = 0; c < n; ++c) {
            colsums[c] += step * Acc{m(row, c).real(), m(row, c).imag()};
        }
        sum += (i & 1u) ? -product() : product();
    }
    return sum;
}

// Run `segment` over [begin, end) split into fixed contiguous chunks,
// combining partials in chunk order.
template <typename Segment>
Acc run_segments(std::uint64_t begin, std::uint64_t end, unsigned threads, Segment segment) {
    const std::uint64_t span = end - begin;
    const unsigned t = pick_threads(threads, span);
    if (t <= 1) return segment(begin, end);

    std::vector<Acc> partials(t, Acc{0.0L, 0.0L});
    std::vector<std::thread> workers;
    workers.reserve(t);
    const std::uint64_t chunk = span / t;
    const std::uint64_t rem = span % t;
    std::uint64_t cursor = begin;
    for (unsigned w = 0; w < t; ++w) {
        const std::uint64_t len = chunk + (w < rem ? 1 : 0);
        const std::uint64_t s = cursor;
        const std::uint64_t e = cursor + len;
        cursor = e;
        workers.emplace_back([&partials, w, s, e, &segment]() { partials[w] = segment(s, e); });
    }
    for (auto& w : workers) w.join();
    return std::accumulate(partials.begin(), partials.end(), Acc{0.0L, 0.0L});
}

}  // namespace

std::string algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::naive: return "naive";
        case Algorithm::ryser: return "ryser";
        case Algorithm::glynn: return "glynn";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "naive") return Algorithm::naive;
    if (name == "ryser") return Algorithm::ryser;
    if (name == "glynn") return Algorithm::glynn;
    throw std::invalid_argument("unknown permanent algorithm: " + name);
}

PermanentResult permanent_naive(const ComplexMatrix& m) {
    check_dim(m, kNaiveDimLimit, "permanent_naive");
    const std::size_t n = m.dim();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    Acc sum{0.0L, 0.0L};
    do {
        Acc term{1.0L, 0.0L};
        for (std::size_t col = 0; col < n; ++col) {
            const Complex& e = m(perm[col], col);
            term *= Acc{e.real(), e.imag()};
        }
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    return {Complex{static_cast<double>(sum.real()), static_cast<double>(sum.imag())},
            Algorithm::naive, n};
}

PermanentResult permanent_ryser(const ComplexMatrix& m, unsigned threads) {
    check_dim(m, kFastDimLimit, "permanent_ryser");
    const std::size_t n = m.dim();

    // Column-major copy so a Gray-code column flip touches contiguous memory.
    std::vector<Complex> cols(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) cols[c * n + r] = m(r, c);

    const std::uint64_t end = std::uint64_t{1} << n;
    Acc sum = run_segments(1, end, threads, [&](std::uint64_t b, std::uint64_t e) {
        return ryser_segment(cols, n, b, e);
    });
    if (n % 2 == 1) sum = -sum;

    return {Complex{static_cast<double>(sum.real()), static_cast<double>(sum.imag())},
            Algorithm::ryser, n};
}

PermanentResult permanent_glynn(const ComplexMatrix& m, unsigned threads) {
    check_dim(m, kFastDimLimit, "permanent_glynn");
    const std::size_t n = m.dim();

    const std::uint64_t end = std::uint64_t{1} << (n - 1);
    Acc sum = run_segments(0, end, threads, [&](std::uint64_t b, std::uint64_t e) {
        return glynn_segment(m, b, e);
    });
    sum = Acc{std::ldexp(static_cast<long double>(sum.real()), -static_cast<int>(n - 1)),
              std::ldexp(static_cast<long double>(sum.imag()), -static_cast<int>(n - 1))};

    return {Complex{static_cast<double>(sum.real()), static_cast<double>(sum.imag())},
            Algorithm::glynn, n};
}

PermanentResult permanent(const ComplexMatrix& m, Algorithm alg, unsigned threads) {
    switch (alg) {
        case Algorithm::naive: return permanent_naive(m);
        case Algorithm::ryser: return permanent_ryser(m, threads);
        case Algorithm::glynn: return permanent_glynn(m, threads);
    }
    throw std::invalid_argument("permanent: bad algorithm tag");
}

}  // namespace homfs
