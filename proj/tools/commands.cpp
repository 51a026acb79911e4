// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "homfs/correlation.hpp"
#include "homfs/dipfinder.hpp"
#include "homfs/geometry.hpp"
#include "homfs/io.hpp"
#include "homfs/permanent.hpp"
#include "homfs/random.hpp"
#include "json.hpp"

namespace homfs::cli {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json distribution_summary(const OutputDistribution& d, std::size_t n) {
    json patterns = json::object();
    for (const auto& [pattern, weight] : d.weights) {
        std::string key = "P(";
        for (std::size_t i = 0; i < pattern.counts.size(); ++i) {
            if (i > 0) key += ',';
            key += std::to_string(pattern.counts[i]);
        }
        key += ')';
        patterns[key] = weight;
    }
    return json{{"n", n}, {"patterns", patterns}, {"total_weight", d.total_weight}};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::string run_config_to_json(const RunConfig& cfg) {
    json j{{"command", cfg.command},
           {"threads", cfg.threads},
           {"seed", cfg.seed},
           {"out", cfg.out},
           {"format", cfg.format},
           {"dp1", cfg.dp1},
           {"dp2", cfg.dp2},
           {"sweep", cfg.sweep},
           {"phases", cfg.phases},
           {"geometry_file", cfg.geometry_file},
           {"canonical", cfg.canonical},
           {"alg", cfg.alg},
           {"norm", cfg.norm},
           {"n", cfg.n},
           {"free1", cfg.free1},
           {"free2", cfg.free2},
           {"fix", cfg.fix},
           {"resolution", cfg.resolution},
           {"n_max", cfg.n_max},
           {"bench_n_min", cfg.bench_n_min},
           {"bench_n_max", cfg.bench_n_max},
           {"bench_reps", cfg.bench_reps}};
    return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    cfg.threads = j.value("threads", cfg.threads);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.out = j.value("out", cfg.out);
    cfg.format = j.value("format", cfg.format);
    cfg.dp1 = j.value("dp1", cfg.dp1);
    cfg.dp2 = j.value("dp2", cfg.dp2);
    cfg.sweep = j.value("sweep", cfg.sweep);
    cfg.phases = j.value("phases", cfg.phases);
    cfg.geometry_file = j.value("geometry_file", cfg.geometry_file);
    cfg.canonical = j.value("canonical", cfg.canonical);
    cfg.alg = j.value("alg", cfg.alg);
    cfg.norm = j.value("norm", cfg.norm);
    cfg.n = j.value("n", cfg.n);
    cfg.free1 = j.value("free1", cfg.free1);
    cfg.free2 = j.value("free2", cfg.free2);
    cfg.fix = j.value("fix", cfg.fix);
    cfg.resolution = j.value("resolution", cfg.resolution);
    cfg.n_max = j.value("n_max", cfg.n_max);
    cfg.inject_fault = j.value("inject_fault", cfg.inject_fault);
    cfg.bench_n_min = j.value("bench_n_min", cfg.bench_n_min);
    cfg.bench_n_max = j.value("bench_n_max", cfg.bench_n_max);
    cfg.bench_reps = j.value("bench_reps", cfg.bench_reps);
    return cfg;
}

int run_g2(const RunConfig& cfg) {
    std::ostringstream os;
    os << "dp1,dp2,g_closed_form,g_permanent\n";
    auto row = [&](double a, double b) {
        const double closed = g2_closed_form(a, b).g_value;
        const double perm =
            gN_permanent(PhaseConfig({a, b}), NormConvention::unit(), Algorithm::ryser,
                         cfg.threads)
                .g_value;
        os << format_double(a) << ',' << format_double(b) << ',' << format_double(closed) << ','
           << format_double(perm) << '\n';
    };
    if (cfg.sweep == 0) {
        row(cfg.dp1, cfg.dp2);
    } else {
        for (std::size_t k = 0; k < cfg.sweep; ++k) {
            row(kTwoPi * static_cast<double>(k) / static_cast<double>(cfg.sweep), 0.0);
        }
    }
    emit(cfg.out, os.str());
    return 0;
}

int run_gn(const RunConfig& cfg) {
    PhaseConfig phases({0.0, 0.0});
    if (cfg.canonical > 0) {
        if (!cfg.phases.empty() || !cfg.geometry_file.empty())
            throw std::invalid_argument("gn: give exactly one of --phases/--geometry/--canonical");
        phases = canonical_dip(cfg.canonical);
    } else if (!cfg.geometry_file.empty()) {
        if (!cfg.phases.empty())
            throw std::invalid_argument("gn: give exactly one of --phases/--geometry/--canonical");
        phases = phases_from_geometry(geometry_from_json(read_file(cfg.geometry_file)));
    } else if (!cfg.phases.empty()) {
        phases = PhaseConfig(cfg.phases);
    } else {
        throw std::invalid_argument("gn: no phases given");
    }

    const NormConvention norm = NormConvention::parse(cfg.norm);
    const Algorithm alg = parse_algorithm(cfg.alg);
    const CorrelationResult result = gN_permanent(phases, norm, alg, cfg.threads);

    const std::size_t n = phases.size();
    const double amp_scale = factorial(static_cast<unsigned>(n)) *
                             std::pow(norm.factor(n), static_cast<double>(n));
    json j{{"n", n},
           {"phases", phases.deltas},
           {"physical", phases.physical},
           {"algorithm", result.algorithm},
           {"norm", norm.name()},
           {"g", result.g_value},
           {"amplitude", json{{"re", result.amplitude.real()}, {"im", result.amplitude.imag()}}},
           {"residual", std::abs(result.amplitude) / amp_scale}};
    emit(cfg.out, j.dump(2) + "\n");
    return 0;
}

int run_contour(const RunConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("contour: need --n >= 2");
    if (cfg.free1 < 1 || cfg.free1 > cfg.n || cfg.free2 < 1 || cfg.free2 > cfg.n ||
        cfg.free1 == cfg.free2)
        throw std::invalid_argument("contour: free phase indices must be distinct and in 1..N");

    std::vector<double> base(cfg.n, 0.0);
    for (const std::string& assignment : cfg.fix) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("contour: --fix expects index=value, got " + assignment);
        const std::size_t idx = std::stoul(assignment.substr(0, eq));
        if (idx < 1 || idx > cfg.n)
            throw std::invalid_argument("contour: fixed phase index out of range");
        if (idx == cfg.free1 || idx == cfg.free2)
            throw std::invalid_argument("contour: cannot fix a free phase");
        base[idx - 1] = std::stod(assignment.substr(eq + 1));
    }

    GridSpec spec;
    spec.resolution = cfg.resolution;
    const Algorithm alg = parse_algorithm(cfg.alg);
    const NormConvention norm = NormConvention::parse(cfg.norm);
    const GridScan grid =
        scan_grid(base, cfg.free1 - 1, cfg.free2 - 1, spec, alg, norm, cfg.threads);
    const ContourSet contour = extract_contour(grid);

    const std::string prefix = cfg.out.empty() ? std::string("contour") : cfg.out;
    std::string grid_file;
    if (cfg.format == "csv") {
        grid_file = prefix + "_grid.csv";
        write_grid_csv(grid_file, grid);
    } else if (cfg.format == "bin") {
        grid_file = prefix + "_grid.f64";
        write_grid_binary(prefix + "_grid", grid);
    } else if (cfg.format == "json") {
        grid_file = prefix + "_grid.json";
        json j{{"resolution", grid.resolution},
               {"range", json::array({grid.lo, grid.hi})},
               {"base_phases", grid.base_phases},
               {"free", json::array({grid.free1 + 1, grid.free2 + 1})},
               {"g", grid.g}};
        write_text_file(grid_file, j.dump() + "\n");
    } else {
        throw std::invalid_argument("contour: unknown --format " + cfg.format);
    }
    const std::string contour_file = prefix + "_contour.json";
    write_text_file(contour_file, to_json(contour) + "\n");

    double grid_min = grid.g[0], grid_max = grid.g[0];
    for (double v : grid.g) {
        grid_min = std::min(grid_min, v);
        grid_max = std::max(grid_max, v);
    }
    json summary{{"grid_file", grid_file},
                 {"contour_file", contour_file},
                 {"segments", contour.polylines.size()},
                 {"vertices", contour.vertex_count()},
                 {"dropped_vertices", contour.dropped_vertices},
                 {"grid_min", grid_min},
                 {"grid_max", grid_max},
                 {"g_threshold", contour.g_threshold}};
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int run_bshom(const RunConfig& cfg) {
    const OutputDistribution bs = beam_splitter_output(OccupancyPattern{{1, 1}});

    const PhaseConfig dip({0.0, std::numbers::pi});
    const OutputDistribution fs =
        full_state_expansion(build_transfer_matrix(dip, NormConvention::sqrt_modes()));

    json free_space = distribution_summary(fs, 2);
    free_space["phases"] = dip.deltas;
    free_space["g2_closed_form"] = g2_closed_form(dip.deltas[0], dip.deltas[1]).g_value;

    json j{{"beam_splitter", distribution_summary(bs, 2)}, {"free_space", free_space}};
    emit(cfg.out, j.dump(2) + "\n");
    return 0;
}

namespace {

struct Check {
    std::string name;
    bool pass;
    double worst;
    double threshold;
};

void add_check(std::vector<Check>& checks, std::string name, double worst, double threshold) {
    checks.push_back({std::move(name), worst <= threshold, worst, threshold});
}

}  // namespace

int run_verify(const RunConfig& cfg) {
    if (cfg.n_max < 2 || cfg.n_max > kFastDimLimit)
        throw std::invalid_argument("verify: --n-max must be in 2.." +
                                    std::to_string(kFastDimLimit));
    const bool fault = cfg.inject_fault == "ryser-sign";
    if (!cfg.inject_fault.empty() && !fault)
        throw std::invalid_argument("verify: unknown fault " + cfg.inject_fault);

    std::vector<Check> checks;

    // canonical dips, both fast algorithms
    {
        double worst = 0.0;
        for (std::size_t n = 2; n <= cfg.n_max; ++n) {
            const PhaseConfig p = canonical_dip(n);
            worst = std::max(worst, verify_dip(p, Algorithm::ryser, cfg.threads)
                                        .normalized_residual);
            worst = std::max(worst, verify_dip(p, Algorithm::glynn, cfg.threads)
                                        .normalized_residual);
        }
        add_check(checks, "canonical-dips", worst, kDipResidualThreshold);
    }

    // oracle equivalence on seeded random matrices
    {
        std::mt19937_64 rng(cfg.seed);
        double worst = 0.0;
        for (std::size_t n = 2; n <= 6; ++n) {
            for (int rep = 0; rep < 20; ++rep) {
                const ComplexMatrix m = random_complex_matrix(n, rng);
                const Complex oracle = permanent_naive(m).value;
                Complex ryser = permanent_ryser(m, cfg.threads).value;
                if (fault && n == 4 && rep == 7) ryser = -ryser;
                const Complex glynn = permanent_glynn(m, cfg.threads).value;
                const double den = std::max(1.0, std::abs(oracle));
                worst = std::max(worst, std::abs(ryser - oracle) / den);
                worst = std::max(worst, std::abs(glynn - oracle) / den);
            }
        }
        add_check(checks, "oracle-equivalence", worst, 1e-10);
    }

    // symmetry suite in normalized G units
    {
        std::mt19937_64 rng(cfg.seed + 1);
        double worst = 0.0;
        for (std::size_t n = 2; n <= 8; ++n) {
            const double scale = std::pow(factorial(static_cast<unsigned>(n)), 2.0);
            for (int rep = 0; rep < 20; ++rep) {
                auto deltas = random_phases(n, rng);
                const double g0 = gN_permanent(PhaseConfig(deltas), NormConvention::unit(),
                                               Algorithm::ryser, cfg.threads)
                                      .g_value;
                auto permuted = deltas;
                std::rotate(permuted.begin(), permuted.begin() + 1, permuted.end());
                auto shifted = deltas;
                shifted[rep % n] += kTwoPi;
                auto negated = deltas;
                for (auto& x : negated) x = -x;
                for (const auto& variant : {permuted, shifted, negated}) {
                    const double g = gN_permanent(PhaseConfig(variant), NormConvention::unit(),
                                                  Algorithm::ryser, cfg.threads)
                                         .g_value;
                    worst = std::max(worst, std::abs(g - g0) / scale);
                }
            }
        }
        add_check(checks, "symmetry-suite", worst, 1e-12);
    }

    // unitarity of the full state expansion
    {
        std::mt19937_64 rng(cfg.seed + 2);
        double worst = 0.0;
        for (std::size_t n = 2; n <= 4; ++n) {
            for (int rep = 0; rep < 10; ++rep) {
                const TransferMatrix tm{random_unitary(n, rng), NormConvention::custom(1.0)};
                worst = std::max(worst, std::abs(full_state_expansion(tm).total_weight - 1.0));
            }
        }
        add_check(checks, "expansion-unitarity", worst, 1e-10);
    }

    // coincidence amplitude equals the permanent
    {
        std::mt19937_64 rng(cfg.seed + 3);
        double worst = 0.0;
        for (std::size_t n = 2; n <= 5; ++n) {
            for (int rep = 0; rep < 10; ++rep) {
                const TransferMatrix tm = build_transfer_matrix(
                    PhaseConfig(random_phases(n, rng)), NormConvention::unit());
                const CoincidenceCheckReport r = check_coincidence_amplitude(tm, cfg.threads);
                worst = std::max(worst, r.discrepancy / r.tolerance);
            }
        }
        add_check(checks, "coincidence-permanent", worst, 1.0);
    }

    // geometry round trip
    {
        std::mt19937_64 rng(cfg.seed + 4);
        std::uniform_real_distribution<double> angle(-1.5, 1.5);
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const std::size_t n = 2 + rep % 5;
            std::vector<double> angles(n);
            for (auto& a : angles) a = angle(rng);
            std::sort(angles.begin(), angles.end());
            bool distinct = true;
            for (std::size_t i = 0; i + 1 < n; ++i)
                if (angles[i + 1] - angles[i] < 1e-6) distinct = false;
            if (!distinct) continue;
            const Geometry g(1.5, 2.5, angles);
            const Geometry back = angles_from_phases(phases_from_geometry(g), 2.5, 1.5);
            for (std::size_t i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(back.detector_angles()[i] - angles[i]));
        }
        add_check(checks, "geometry-round-trip", worst, 1e-12);
    }

    // two-photon closed form vs permanent route
    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            for (int j = 0; j < 100; ++j) {
                const double a = kTwoPi * i / 100.0;
                const double b = kTwoPi * j / 100.0;
                worst = std::max(worst,
                                 std::abs(g2_closed_form(a, b).g_value -
                                          gN_permanent(PhaseConfig({a, b}),
                                                       NormConvention::unit(), Algorithm::ryser,
                                                       cfg.threads)
                                              .g_value));
            }
        }
        add_check(checks, "g2-closed-form-vs-permanent", worst, 1e-12);
    }

    bool all_pass = true;
    json report_checks = json::array();
    for (const Check& c : checks) {
        all_pass = all_pass && c.pass;
        report_checks.push_back(json{{"name", c.name},
                                     {"pass", c.pass},
                                     {"worst", c.worst},
                                     {"threshold", c.threshold}});
    }
    json report{{"n_max", cfg.n_max}, {"pass", all_pass}, {"checks", report_checks}};
    emit(cfg.out, report.dump(2) + "\n");
    if (!all_pass) {
        for (const Check& c : checks) {
            if (!c.pass) std::cerr << "verify: FAILED " << c.name << "\n";
        }
        return 3;
    }
    return 0;
}

int run_bench(const RunConfig& cfg) {
    if (cfg.bench_n_min < 2 || cfg.bench_n_max < cfg.bench_n_min ||
        cfg.bench_n_max > kFastDimLimit)
        throw std::invalid_argument("bench: need 2 <= n-min <= n-max <= " +
                                    std::to_string(kFastDimLimit));
    if (cfg.bench_reps < 1) throw std::invalid_argument("bench: need reps >= 1");

    std::ostringstream os;
    os << "algorithm,N,wall_time_ns,abs_value\n";
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t n = cfg.bench_n_min; n <= cfg.bench_n_max; ++n) {
        const ComplexMatrix m =
            build_transfer_matrix(PhaseConfig(random_phases(n, rng)), NormConvention::unit())
                .matrix;
        struct Algo {
            Algorithm alg;
            std::size_t limit;
        };
        for (const Algo a : {Algo{Algorithm::naive, kNaiveDimLimit},
                             Algo{Algorithm::ryser, kFastDimLimit},
                             Algo{Algorithm::glynn, kFastDimLimit}}) {
            if (n > a.limit) continue;
            (void)permanent(m, a.alg, cfg.threads);  // warm-up, untimed
            std::vector<double> times;
            Complex value{};
            for (std::size_t rep = 0; rep < cfg.bench_reps; ++rep) {
                const auto t0 = std::chrono::steady_clock::now();
                value = permanent(m, a.alg, cfg.threads).value;
                const auto t1 = std::chrono::steady_clock::now();
                times.push_back(static_cast<double>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
            }
            os << algorithm_name(a.alg) << ',' << n << ',' << format_double(median(times)) << ','
               << format_double(std::abs(value)) << '\n';
        }
    }
    emit(cfg.out, os.str());
    return 0;
}

int run(const RunConfig& cfg) {
    if (cfg.command == "g2") return run_g2(cfg);
    if (cfg.command == "gn") return run_gn(cfg);
    if (cfg.command == "contour") return run_contour(cfg);
    if (cfg.command == "bshom") return run_bshom(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "bench") return run_bench(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

}  // namespace homfs::cli
