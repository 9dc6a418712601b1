#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wentzell {

/// Uniform conforming mesh of an interval or a tensor-product rectangle.
/// Interior shape functions are nodal P1 hats (1D) or Q1 bilinears (2D).
/// The boundary carries a node-lumped surface quadrature: weight[j] is the
/// surface measure attributed to boundary node j (counting measure at the
/// two interval endpoints, summed half-edge lengths along the rectangle
/// perimeter), so the diagonal weight operator W represents integration
/// over the boundary.
struct Mesh {
    int dimension = 1;
    std::vector<std::array<double, 2>> nodes;     // y = 0 in 1D
    std::vector<std::vector<int>> elements;       // 2 nodes per element in 1D, 4 in 2D
    std::vector<int> boundary_nodes;
    Eigen::VectorXd boundary_weights;
    Eigen::VectorXd element_volumes;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int element_count() const { return static_cast<int>(elements.size()); }
    int boundary_count() const { return static_cast<int>(boundary_nodes.size()); }
    double domain_measure() const { return element_volumes.sum(); }
    double boundary_measure() const { return boundary_weights.sum(); }

    std::string to_json() const;
};

Mesh build_interval_mesh(double a, double b, int n);
Mesh build_rectangle_mesh(double lx, double ly, int nx, int ny);

/// Discrete trace pair (E, W): E restricts a nodal vector to the boundary
/// nodes, W is the diagonal boundary weight operator.
struct TraceMap {
    std::vector<int> index;     // boundary node indices, in mesh order
    Eigen::VectorXd weight;     // surface weights per boundary node

    int size() const { return static_cast<int>(index.size()); }

    Eigen::VectorXd restrict_to_boundary(const Eigen::VectorXd& u) const {
        Eigen::VectorXd r(size());
        for (int j = 0; j < size(); ++j) r[j] = u[index[j]];
        return r;
    }

    /// E^T g: scatter a boundary vector back to interior coordinates.
    Eigen::VectorXd scatter(const Eigen::VectorXd& g, int n) const {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < size(); ++j) r[index[j]] += g[j];
        return r;
    }
};

TraceMap boundary_trace_map(const Mesh& mesh);

}  // namespace wentzell
