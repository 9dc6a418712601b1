#pragma once

#include <string>

#include <Eigen/Dense>

#include "wentzell/mesh.hpp"
#include "wentzell/semigroup.hpp"

namespace wentzell {

/// Coordinate-format export: one "row,col,value" line per entry with
/// |value| > drop_tol (0 keeps exact zeros out only).
void write_coordinate_csv(const std::string& path, const Eigen::MatrixXd& A,
                          double drop_tol = 0.0);

void write_eigen_csv(const std::string& path, const EigenDecomposition& decomp);

void write_eigenvector_csv(const std::string& path, const Mesh& mesh,
                           const EigenDecomposition& decomp);

/// Trajectory CSV: t,node_id,value,component with boundary rows duplicated
/// from the trace.
void write_trajectory_csv(const std::string& path, const Mesh& mesh, const Trajectory& traj);

void write_text_file(const std::string& path, const std::string& content);

std::string format_double(double v);

/// FNV-1a content hash, used to tag reports with the coefficient section of
/// the configuration.
std::uint64_t fnv1a_hash(const std::string& s);

}  // namespace wentzell
