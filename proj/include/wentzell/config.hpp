#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wentzell/coefficients.hpp"
#include "wentzell/elliptic.hpp"

namespace wentzell {

/// Run configuration: JSON with a strict schema (unknown keys rejected) that
/// round-trips through serialize/parse.
struct RunConfig {
    // domain
    std::string domain_type = "interval";  // interval | rectangle
    double a = 0.0, b = 1.0;               // interval
    int n = 1024;
    double lx = 1.0, ly = 1.0;             // rectangle
    int nx = 16, ny = 16;

    CoefficientSet coefficients = CoefficientSet::reference();

    std::string mode = "auto";  // lumped | consistent | auto
    int order_power = 1;
    int eigen_count = 16;

    // time grid
    double t_start = 1e-3, t_stop = 1.0;
    int t_points = 30;
    std::string t_spacing = "log";  // log | linear
    std::vector<double> t_explicit; // used when nonempty

    // scheme
    std::string scheme = "spectral";  // spectral | theta
    double theta = 0.5;
    double dt = 1e-4;
    int steps = 1000;

    // initial data
    std::string initial_u1 = "1";
    std::string initial_u2 = "trace";  // "trace" couples u2 to u1

    std::string output_dir = "out";
    std::uint64_t seed = 1;
    bool plots = true;

    static RunConfig from_json_text(const std::string& text);
    static RunConfig load(const std::string& path);
    std::string to_json_text() const;

    Mesh build_mesh() const;
    MassMode mass_mode(const Mesh& mesh) const;
    std::vector<double> time_grid() const;

    bool operator==(const RunConfig& other) const {
        return to_json_text() == other.to_json_text();
    }
};

}  // namespace wentzell
