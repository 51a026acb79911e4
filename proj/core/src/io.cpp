// Copyright 2026 The homfs Authors
// SPDX-License-Identifier: Apache-2.0

#include "homfs/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace homfs {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string pattern_key(const OccupancyPattern& p) {
    std::string key;
    for (std::size_t i = 0; i < p.counts.size(); ++i) {
        if (i > 0) key += ',';
        key += std::to_string(p.counts[i]);
    }
    return key;
}

std::uint64_t to_little_endian(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) out |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return out;
}

json grid_sidecar(const GridScan& grid, const std::string& data_file) {
    json free_indices = json::array({grid.free1 + 1, grid.free2 + 1});
    return json{{"kind", "homfs-grid"},
                {"dtype", "float64-le"},
                {"order", "row-major"},
                {"n", grid.base_phases.size()},
                {"resolution", grid.resolution},
                {"range", json::array({grid.lo, grid.hi})},
                {"free", free_indices},
                {"base_phases", grid.base_phases},
                {"algorithm", algorithm_name(grid.algorithm)},
                {"norm", grid.norm.name()},
                {"data_file", data_file}};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_json(const Geometry& geom) {
    json j{{"n", geom.n_sources()},
           {"d", geom.spacing_d()},
           {"k", geom.wavenumber_k()},
           {"angles", geom.detector_angles()}};
    return j.dump();
}

std::string to_json(const PhaseConfig& phases) {
    json j{{"deltas", phases.deltas}, {"physical", phases.physical}};
    return j.dump();
}

std::string to_json(const CorrelationResult& result) {
    json j{{"g", result.g_value},
           {"amplitude", complex_to_json(result.amplitude)},
           {"n", result.n},
           {"norm", result.norm.name()},
           {"algorithm", result.algorithm}};
    return j.dump();
}

std::string to_json(const OutputDistribution& dist) {
    json patterns = json::array();
    for (const auto& [pattern, weight] : dist.weights) {
        patterns.push_back(json{{"counts", pattern.counts},
                                {"weight", weight},
                                {"amplitude", complex_to_json(dist.amplitude(pattern))}});
    }
    json j{{"patterns", patterns}, {"total_weight", dist.total_weight}};
    return j.dump();
}

std::string to_json(const DipCertificate& cert) {
    json j{{"n", cert.n},
           {"phases", cert.phases.deltas},
           {"physical", cert.phases.physical},
           {"normalized_residual", cert.normalized_residual},
           {"verified", cert.verified}};
    return j.dump();
}

std::string to_json(const ContourSet& contour) {
    json polylines = json::array();
    for (const auto& line : contour.polylines) {
        json pts = json::array();
        for (const auto& p : line) pts.push_back(json::array({p[0], p[1]}));
        polylines.push_back(std::move(pts));
    }
    json j{{"n", contour.base_phases.size()},
           {"free", json::array({contour.free1 + 1, contour.free2 + 1})},
           {"base_phases", contour.base_phases},
           {"resolution", contour.resolution},
           {"range", json::array({contour.lo, contour.hi})},
           {"g_threshold", contour.g_threshold},
           {"marching_level", contour.marching_level},
           {"dropped_vertices", contour.dropped_vertices},
           {"vertex_count", contour.vertex_count()},
           {"polylines", polylines}};
    return j.dump();
}

Geometry geometry_from_json(const std::string& text) {
    const json j = json::parse(text);
    const auto angles = j.at("angles").get<std::vector<double>>();
    const auto n = j.at("n").get<std::size_t>();
    if (n != angles.size())
        throw std::invalid_argument("geometry json: n does not match angles length");
    return Geometry(j.at("d").get<double>(), j.at("k").get<double>(), angles);
}

PhaseConfig phase_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    return PhaseConfig(j.at("deltas").get<std::vector<double>>(),
                       j.value("physical", false));
}

void write_grid_csv(const std::filesystem::path& path, const GridScan& grid) {
    std::ofstream out(path, std::ios::binary);  // binary: no platform newline rewriting
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "dp1,dp2,g\n";
    const std::size_t r = grid.resolution;
    for (std::size_t i = 0; i < r; ++i) {
        const std::string x = format_double(grid.axis_value(i));
        for (std::size_t j = 0; j < r; ++j) {
            out << x << ',' << format_double(grid.axis_value(j)) << ','
                << format_double(grid.g[i * r + j]) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_grid_binary(const std::filesystem::path& prefix, const GridScan& grid) {
    std::filesystem::path data_path = prefix;
    data_path += ".f64";
    std::filesystem::path sidecar_path = prefix;
    sidecar_path += ".json";

    std::ofstream out(data_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + data_path.string());
    for (double v : grid.g) {
        const std::uint64_t le = to_little_endian(std::bit_cast<std::uint64_t>(v));
        out.write(reinterpret_cast<const char*>(&le), sizeof(le));
    }
    if (!out) throw std::runtime_error("write failed: " + data_path.string());
    out.close();

    write_text_file(sidecar_path, grid_sidecar(grid, data_path.filename().string()).dump(2) + "\n");
}

GridScan read_grid_binary(const std::filesystem::path& prefix) {
    std::filesystem::path data_path = prefix;
    data_path += ".f64";
    std::filesystem::path sidecar_path = prefix;
    sidecar_path += ".json";

    std::ifstream side(sidecar_path);
    if (!side) throw std::runtime_error("cannot open " + sidecar_path.string());
    json j;
    side >> j;

    GridScan grid;
    grid.base_phases = j.at("base_phases").get<std::vector<double>>();
    grid.free1 = j.at("free").at(0).get<std::size_t>() - 1;
    grid.free2 = j.at("free").at(1).get<std::size_t>() - 1;
    grid.resolution = j.at("resolution").get<std::size_t>();
    grid.lo = j.at("range").at(0).get<double>();
    grid.hi = j.at("range").at(1).get<double>();
    grid.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    grid.norm = NormConvention::parse(j.at("norm").get<std::string>());

    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + data_path.string());
    grid.g.resize(grid.resolution * grid.resolution);
    for (double& v : grid.g) {
        std::uint64_t le = 0;
        in.read(reinterpret_cast<char*>(&le), sizeof(le));
        v = std::bit_cast<double>(to_little_endian(le));
    }
    if (!in) throw std::runtime_error("grid data truncated: " + data_path.string());
    return grid;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace homfs
