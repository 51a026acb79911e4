// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "homfs/dipfinder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace homfs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxGridPoints = 100'000'000;

// ---------------------------------------------------------------------------
// Nelder-Mead (reflection 1, expansion 2, contraction 0.5, shrink 0.5)
// ---------------------------------------------------------------------------

struct NelderMeadOutcome {
    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool reached_target = false;
};

NelderMeadOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<double>& x0, double initial_step,
                              std::size_t max_iterations, double target_value,
                              double min_simplex = 1e-13) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> xs(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) xs[i + 1][i] += initial_step;
    std::vector<double> fs(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) fs[i] = f(xs[i]);

    NelderMeadOutcome out;
    auto record_best = [&]() {
        for (std::size_t i = 0; i <= dim; ++i) {
            if (fs[i] < out.best_f) {
                out.best_f = fs[i];
                out.best_x = xs[i];
            }
        }
    };
    record_best();

    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
    for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
        if (out.best_f <= target_value) {
            out.reached_target = true;
            break;
        }

        // order: best .. worst
        std::vector<std::size_t> idx(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t best = idx[0], worst = idx[dim], second_worst = idx[dim - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            spread = std::max(spread, std::abs(xs[worst][i] - xs[best][i]));
        if (spread < min_simplex) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += xs[i][k];
        }
        for (std::size_t k = 0; k < dim; ++k) centroid[k] /= static_cast<double>(dim);

        for (std::size_t k = 0; k < dim; ++k) xr[k] = centroid[k] + (centroid[k] - xs[worst][k]);
        const double fr = f(xr);

        if (fr < fs[best]) {
            for (std::size_t k = 0; k < dim; ++k) xe[k] = centroid[k] + 2.0 * (centroid[k] - xs[worst][k]);
            const double fe = f(xe);
            if (fe < fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr < fs[second_worst]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            const std::vector<double>& pivot = outside ? xr : xs[worst];
            for (std::size_t k = 0; k < dim; ++k) xc[k] = centroid[k] + 0.5 * (pivot[k] - centroid[k]);
            const double fc = f(xc);
            if (fc < std::min(fr, fs[worst])) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < dim; ++k)
                        xs[i][k] = xs[best][k] + 0.5 * (xs[i][k] - xs[best][k]);
                    fs[i] = f(xs[i]);
                }
            }
        }
        record_best();
    }
    record_best();
    return out;
}

}  // namespace

PhaseConfig canonical_dip(std::size_t n) {
    if (n < 2) throw std::invalid_argument("canonical_dip: need n >= 2");
    std::vector<double> deltas(n);
    deltas[0] = kTwoPi / static_cast<double>(n);
    for (std::size_t m = 2; m <= n; ++m) deltas[m - 1] = kTwoPi * static_cast<double>(m);
    return PhaseConfig(std::move(deltas));
}

DipCertificate verify_dip(const PhaseConfig& phases, Algorithm alg, unsigned threads) {
    const std::size_t n = phases.size();
    const TransferMatrix tm = build_transfer_matrix(phases, NormConvention::unit());
    const PermanentResult perm = permanent(tm.matrix, alg, threads);
    const double residual = std::abs(perm.value) / factorial(static_cast<unsigned>(n));
    return DipCertificate{phases, residual, residual <= kDipResidualThreshold, n};
}

double GridScan::eval(double x, double y) const {
    std::vector<double> phases = base_phases;
    phases[free1] = x;
    phases[free2] = y;
    return gN_permanent(PhaseConfig(std::move(phases)), norm, algorithm).g_value;
}

double GridScan::g_scale() const {
    const std::size_t n = base_phases.size();
    const double amp_max =
        factorial(static_cast<unsigned>(n)) * std::pow(norm.factor(n), static_cast<double>(n));
    return amp_max * amp_max;
}

GridScan scan_grid(const std::vector<double>& base_phases, std::size_t free1, std::size_t free2,
                   const GridSpec& spec, Algorithm alg, NormConvention norm, unsigned threads) {
    const std::size_t n = base_phases.size();
    if (n < 2) throw std::invalid_argument("scan_grid: need at least 2 phases");
    if (free1 >= n || free2 >= n || free1 == free2)
        throw std::invalid_argument("scan_grid: free indices must be distinct and < N");
    if (spec.resolution < 2) throw std::invalid_argument("scan_grid: resolution must be >= 2");
    if (spec.resolution * spec.resolution > kMaxGridPoints) {
        throw DimensionLimitError("scan_grid: resolution^2 exceeds the 1e8-point guard",
                                  spec.resolution * spec.resolution, kMaxGridPoints);
    }
    if (!(spec.lo < spec.hi)) throw std::invalid_argument("scan_grid: need lo < hi");
    if (n > kFastDimLimit)
        throw DimensionLimitError("scan_grid: N exceeds permanent limit", n, kFastDimLimit);

    GridScan scan;
    scan.base_phases = base_phases;
    scan.free1 = free1;
    scan.free2 = free2;
    scan.resolution = spec.resolution;
    scan.lo = spec.lo;
    scan.hi = spec.hi;
    scan.algorithm = alg;
    scan.norm = norm;
    scan.g.assign(spec.resolution * spec.resolution, 0.0);

    const std::size_t r = spec.resolution;
    auto run_rows = [&](std::size_t row_begin, std::size_t row_end) {
        std::vector<double> phases = base_phases;
        for (std::size_t i = row_begin; i < row_end; ++i) {
            phases[free1] = scan.axis_value(i);
            for (std::size_t j = 0; j < r; ++j) {
                phases[free2] = scan.axis_value(j);
                scan.g[i * r + j] = gN_permanent(PhaseConfig(phases), norm, alg).g_value;
            }
        }
    };

    unsigned t = threads;
    if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
    t = static_cast<unsigned>(std::min<std::size_t>(t, r));
    if (t <= 1) {
        run_rows(0, r);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(t);
        const std::size_t chunk = r / t;
        const std::size_t rem = r % t;
        std::size_t cursor = 0;
        for (unsigned w = 0; w < t; ++w) {
            const std::size_t len = chunk + (w < rem ? 1 : 0);
            workers.emplace_back(run_rows, cursor, cursor + len);
            cursor += len;
        }
        for (auto& w : workers) w.join();
    }
    return scan;
}

namespace {

struct Crossing {
    double x;
    double y;
};

// Linear interpolation of the marching level along one cell edge.
double interp(double a, double b, double level) {
    if (a == b) return 0.5;
    const double t = (level - a) / (b - a);
    return std::clamp(t, 0.0, 1.0);
}

// Golden-section minimum of f over [a, b]; the restriction of G to a line
// through a transversally-crossed zero valley is locally unimodal.
template <typename F>
double golden_min(F&& f, double a, double b) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 72; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

// Pull a marching-squares crossing onto the zero manifold: a few rounds of
// line minimization along the finite-difference downhill direction. The
// valley is quadratic transverse to the zero curve, so one or two rounds
// land on the floor; movement stays within a couple of cells.
bool refine_vertex(const GridScan& grid, double cell, double g_threshold, Crossing& v,
                   std::size_t& evals) {
    const double target = 1e-4 * g_threshold;
    const double h = 1e-5 * cell;
    double gx = grid.eval(v.x, v.y);
    for (int round = 0; round < 4 && gx > target; ++round) {
        const double dx = grid.eval(v.x + h, v.y) - grid.eval(v.x - h, v.y);
        const double dy = grid.eval(v.x, v.y + h) - grid.eval(v.x, v.y - h);
        const double len = std::hypot(dx, dy);
        evals += 5;
        if (len == 0.0) break;
        const double ux = -dx / len, uy = -dy / len;
        const double span = 2.0 * cell;
        auto line = [&](double s) {
            ++evals;
            return grid.eval(v.x + s * ux, v.y + s * uy);
        };
        const double s_best = golden_min(line, -span, span);
        const double g_best = grid.eval(v.x + s_best * ux, v.y + s_best * uy);
        if (g_best >= gx) break;
        v.x += s_best * ux;
        v.y += s_best * uy;
        gx = g_best;
    }
    return gx <= g_threshold;
}

}  // namespace

std::size_t ContourSet::vertex_count() const {
    std::size_t c = 0;
    for (const auto& p : polylines) c += p.size();
    return c;
}

ContourSet extract_contour(const GridScan& grid, double marching_level) {
    if (grid.resolution < 2 || grid.g.size() != grid.resolution * grid.resolution)
        throw std::invalid_argument("extract_contour: malformed grid");

    ContourSet set;
    set.base_phases = grid.base_phases;
    set.free1 = grid.free1;
    set.free2 = grid.free2;
    set.resolution = grid.resolution;
    set.lo = grid.lo;
    set.hi = grid.hi;
    set.g_threshold = kDipResidualThreshold * grid.g_scale();
    set.marching_level = marching_level > 0.0 ? marching_level : 1e-3 * grid.g_scale();

    const double level = set.marching_level;
    const std::size_t r = grid.resolution;
    const double cell = (grid.hi - grid.lo) / static_cast<double>(r);
    std::size_t evals = 0;

    auto inside = [&](double v) { return v <= level; };

    for (std::size_t i = 0; i + 1 < r; ++i) {
        const double x0 = grid.axis_value(i);
        const double x1 = grid.axis_value(i + 1);
        for (std::size_t j = 0; j + 1 < r; ++j) {
            const double y0 = grid.axis_value(j);
            const double y1 = grid.axis_value(j + 1);
            const double c00 = grid.value(i, j);
            const double c10 = grid.value(i + 1, j);
            const double c11 = grid.value(i + 1, j + 1);
            const double c01 = grid.value(i, j + 1);

            unsigned mask = 0;
            if (inside(c00)) mask |= 1u;
            if (inside(c10)) mask |= 2u;
            if (inside(c11)) mask |= 4u;
            if (inside(c01)) mask |= 8u;
            if (mask == 0u || mask == 15u) continue;

            // Edge crossings: 0 bottom, 1 right, 2 top, 3 left.
            const Crossing e0{x0 + cell * interp(c00, c10, level), y0};
            const Crossing e1{x1, y0 + cell * interp(c10, c11, level)};
            const Crossing e2{x0 + cell * interp(c01, c11, level), y1};
            const Crossing e3{x0, y0 + cell * interp(c00, c01, level)};

            std::vector<std::pair<Crossing, Crossing>> segments;
            switch (mask) {
                case 1: case 14: segments.push_back({e0, e3}); break;
                case 2: case 13: segments.push_back({e0, e1}); break;
                case 3: case 12: segments.push_back({e3, e1}); break;
                case 4: case 11: segments.push_back({e1, e2}); break;
                case 6: case 9: segments.push_back({e0, e2}); break;
                case 7: case 8: segments.push_back({e3, e2}); break;
                case 5: {
                    // saddle: cell-center sample decides the pairing
                    if (inside(grid.eval(0.5 * (x0 + x1), 0.5 * (y0 + y1)))) {
                        segments.push_back({e3, e2});
                        segments.push_back({e0, e1});
                    } else {
                        segments.push_back({e0, e3});
                        segments.push_back({e1, e2});
                    }
                    break;
                }
                case 10: {
                    if (inside(grid.eval(0.5 * (x0 + x1), 0.5 * (y0 + y1)))) {
                        segments.push_back({e0, e3});
                        segments.push_back({e1, e2});
                    } else {
                        segments.push_back({e3, e2});
                        segments.push_back({e0, e1});
                    }
                    break;
                }
                default: break;
            }

            for (auto& [a, b] : segments) {
                const bool a_ok = refine_vertex(grid, cell, set.g_threshold, a, evals);
                const bool b_ok = refine_vertex(grid, cell, set.g_threshold, b, evals);
                if (a_ok && b_ok) {
                    set.polylines.push_back({std::array<double, 2>{a.x, a.y},
                                             std::array<double, 2>{b.x, b.y}});
                } else {
                    set.dropped_vertices += (a_ok ? 0 : 1) + (b_ok ? 0 : 1);
                }
            }
        }
    }
    return set;
}

DipCertificate refine_dip(const PhaseConfig& start, const std::vector<std::size_t>& free_indices,
                          Algorithm alg, std::size_t max_iterations) {
    const std::size_t n = start.size();
    for (std::size_t idx : free_indices) {
        if (idx >= n) throw std::invalid_argument("refine_dip: free index out of range");
    }
    if (free_indices.empty()) return verify_dip(start, alg);

    const double n_fact = factorial(static_cast<unsigned>(n));
    auto objective = [&](const std::vector<double>& x) {
        std::vector<double> phases = start.deltas;
        for (std::size_t k = 0; k < free_indices.size(); ++k) phases[free_indices[k]] = x[k];
        const double g = gN_permanent(PhaseConfig(std::move(phases)), NormConvention::unit(), alg)
                             .g_value;
        return g / (n_fact * n_fact);  // (|perm|/N!)^2
    };

    std::vector<double> x0;
    x0.reserve(free_indices.size());
    for (std::size_t idx : free_indices) x0.push_back(start.deltas[idx]);

    const double target = 0.25 * kDipResidualThreshold * kDipResidualThreshold;
    const NelderMeadOutcome out = nelder_mead(objective, x0, 1e-2, max_iterations, target);

    std::vector<double> refined = start.deltas;
    for (std::size_t k = 0; k < free_indices.size(); ++k) refined[free_indices[k]] = out.best_x[k];
    return verify_dip(PhaseConfig(std::move(refined), start.physical), alg);
}

}  // namespace homfs
