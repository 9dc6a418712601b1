#include "wentzell/mesh.hpp"

#include <sstream>

#include "wentzell/errors.hpp"

namespace wentzell {

Mesh build_interval_mesh(double a, double b, int n) {
    if (!(a < b)) throw Error(ErrorKind::invalid_domain, "interval requires a < b");
    if (n < 2) throw Error(ErrorKind::too_coarse, "interval mesh requires n >= 2");
    Mesh m;
    m.dimension = 1;
    const double h = (b - a) / n;
    m.nodes.resize(n + 1);
    for (int i = 0; i <= n; ++i) m.nodes[i] = {a + h * i, 0.0};
    m.nodes[n][0] = b;  // exact right endpoint
    m.elements.resize(n);
    m.element_volumes.resize(n);
    for (int e = 0; e < n; ++e) {
        m.elements[e] = {e, e + 1};
        m.element_volumes[e] = m.nodes[e + 1][0] - m.nodes[e][0];
    }
    m.boundary_nodes = {0, n};
    m.boundary_weights = Eigen::Vector2d::Ones();
    return m;
}

Mesh build_rectangle_mesh(double lx, double ly, int nx, int ny) {
    if (!(lx > 0.0) || !(ly > 0.0))
        throw Error(ErrorKind::invalid_domain, "rectangle requires positive side lengths");
    if (nx < 2 || ny < 2) throw Error(ErrorKind::too_coarse, "rectangle mesh requires nx, ny >= 2");
    Mesh m;
    m.dimension = 2;
    const double hx = lx / nx, hy = ly / ny;
    const int Nx = nx + 1, Ny = ny + 1;
    m.nodes.resize(static_cast<size_t>(Nx) * Ny);
    auto nid = [Nx](int i, int j) { return j * Nx + i; };
    for (int j = 0; j < Ny; ++j)
        for (int i = 0; i < Nx; ++i)
            m.nodes[nid(i, j)] = {i == nx ? lx : hx * i, j == ny ? ly : hy * j};
    m.elements.reserve(static_cast<size_t>(nx) * ny);
    m.element_volumes.resize(nx * ny);
    int e = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            m.elements.push_back({nid(i, j), nid(i + 1, j), nid(i + 1, j + 1), nid(i, j + 1)});
            m.element_volumes[e++] = hx * hy;
        }
    // perimeter nodes with trapezoidal (half-edge) lumped weights
    std::vector<double> w(m.nodes.size(), 0.0);
    std::vector<bool> onb(m.nodes.size(), false);
    for (int i = 0; i < nx; ++i)
        for (int j : {0, ny}) {
            w[nid(i, j)] += hx / 2;
            w[nid(i + 1, j)] += hx / 2;
            onb[nid(i, j)] = onb[nid(i + 1, j)] = true;
        }
    for (int j = 0; j < ny; ++j)
        for (int i : {0, nx}) {
            w[nid(i, j)] += hy / 2;
            w[nid(i, j + 1)] += hy / 2;
            onb[nid(i, j)] = onb[nid(i, j + 1)] = true;
        }
    for (size_t k = 0; k < m.nodes.size(); ++k)
        if (onb[k]) m.boundary_nodes.push_back(static_cast<int>(k));
    m.boundary_weights.resize(m.boundary_nodes.size());
    for (size_t k = 0; k < m.boundary_nodes.size(); ++k)
        m.boundary_weights[k] = w[m.boundary_nodes[k]];
    return m;
}

TraceMap boundary_trace_map(const Mesh& mesh) {
    TraceMap t;
    t.index = mesh.boundary_nodes;
    t.weight = mesh.boundary_weights;
    return t;
}

std::string Mesh::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"dimension\":" << dimension << ",\"nodes\":[";
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (i) os << ",";
        if (dimension == 1)
            os << nodes[i][0];
        else
            os << "[" << nodes[i][0] << "," << nodes[i][1] << "]";
    }
    os << "],\"elements\":[";
    for (size_t e = 0; e < elements.size(); ++e) {
        if (e) os << ",";
        os << "[";
        for (size_t k = 0; k < elements[e].size(); ++k) {
            if (k) os << ",";
            os << elements[e][k];
        }
        os << "]";
    }
    os << "],\"boundary_nodes\":[";
    for (size_t k = 0; k < boundary_nodes.size(); ++k) {
        if (k) os << ",";
        os << boundary_nodes[k];
    }
    os << "],\"boundary_weights\":[";
    for (int k = 0; k < boundary_weights.size(); ++k) {
        if (k) os << ",";
        os << boundary_weights[k];
    }
    os << "]}";
    return os.str();
}

}  // namespace wentzell
