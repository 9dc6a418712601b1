#include "wentzell/io.hpp"

#include <cstdio>
#include <fstream>

#include "wentzell/errors.hpp"

namespace wentzell {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::io_error, "cannot open output file " + path);
    return os;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
    auto os = open_out(path);
    os << content;
}

void write_coordinate_csv(const std::string& path, const Eigen::MatrixXd& A, double drop_tol) {
    auto os = open_out(path);
    os << "row,col,value\n";
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (std::abs(A(i, j)) > drop_tol)
                os << i << "," << j << "," << format_double(A(i, j)) << "\n";
}

void write_eigen_csv(const std::string& path, const EigenDecomposition& decomp) {
    auto os = open_out(path);
    os << "k,lambda,residual\n";
    for (int k = 0; k < decomp.count(); ++k)
        os << (k + 1) << "," << format_double(decomp.eigenvalues[k]) << ","
           << format_double(decomp.residuals[k]) << "\n";
}

void write_eigenvector_csv(const std::string& path, const Mesh& mesh,
                           const EigenDecomposition& decomp) {
    auto os = open_out(path);
    os << "node,x,y";
    for (int k = 0; k < decomp.count(); ++k) os << ",e" << (k + 1);
    os << "\n";
    for (int i = 0; i < mesh.node_count(); ++i) {
        os << i << "," << format_double(mesh.nodes[i][0]) << ","
           << format_double(mesh.nodes[i][1]);
        for (int k = 0; k < decomp.count(); ++k)
            os << "," << format_double(decomp.eigenvectors(i, k));
        os << "\n";
    }
}

void write_trajectory_csv(const std::string& path, const Mesh& mesh, const Trajectory& traj) {
    auto os = open_out(path);
    os << "t,node_id,value,component\n";
    TraceMap trace = boundary_trace_map(mesh);
    for (size_t ti = 0; ti < traj.times.size(); ++ti) {
        const auto col = traj.states.col(static_cast<Eigen::Index>(ti));
        for (int i = 0; i < mesh.node_count(); ++i)
            os << format_double(traj.times[ti]) << "," << i << "," << format_double(col[i])
               << ",interior\n";
        for (int j = 0; j < trace.size(); ++j)
            os << format_double(traj.times[ti]) << "," << trace.index[j] << ","
               << format_double(col[trace.index[j]]) << ",boundary\n";
    }
}

}  // namespace wentzell
