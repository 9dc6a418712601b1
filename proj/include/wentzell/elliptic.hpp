#pragma once

#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "wentzell/coefficients.hpp"
#include "wentzell/mesh.hpp"

namespace wentzell {

enum class MassMode { lumped, consistent };

/// Default mass mode by resolution: consistent up to 2048 interior nodes,
/// lumped above.
inline MassMode default_mass_mode(const Mesh& mesh) {
    return mesh.node_count() <= 2049 ? MassMode::consistent : MassMode::lumped;
}

/// Interior mass matrix of the nodal shape functions, optionally weighted by
/// a coefficient. Lumped variant is the row-sum diagonal of the consistent one.
Eigen::MatrixXd assemble_mass(const Mesh& mesh, MassMode mode,
                              const ScalarField* weight = nullptr);

/// Stiffness matrix K_ij = ∫ (grad phi_j)' Q grad phi_i. Symmetric with exact
/// zero row sums (diagonal set to the negative off-diagonal sum, which the
/// partition of unity makes exact). Also returns the element-level factor
/// rows F with K = F' F up to assembly roundoff, used for accurate
/// small-eigenvalue evaluations.
struct StiffnessResult {
    Eigen::MatrixXd K;
    Eigen::MatrixXd factor_rows;   // (rows x N), K ≈ factor_rows' factor_rows
};
StiffnessResult assemble_stiffness(const Mesh& mesh, const MatrixField& Q);

/// Diagonal boundary mass (M_gamma)_{jj} = weight(x_j) * w_j on boundary
/// nodes, returned as a full-length diagonal vector.
Eigen::VectorXd assemble_boundary_mass(const Mesh& mesh, const ScalarField& weight);

/// Discrete Neumann/Robin realization B_h u = M^{-1}(K + M_{gamma,delta}) u
/// of the second-order divergence-form operator, with its mass matrices and
/// the semibound (smallest generalized eigenvalue of (K + M_gd, M)).
class RealizedOperator {
public:
    std::shared_ptr<const Mesh> mesh;
    TraceMap trace;
    MassMode mode = MassMode::consistent;
    Eigen::MatrixXd M;             // interior mass (diagonal matrix when lumped)
    Eigen::MatrixXd K;
    Eigen::VectorXd mgd;           // diagonal of M_{gamma,delta} (delta-weighted)
    Eigen::MatrixXd stiffness_factor;
    bool q_is_identity = false;
    bool delta_is_zero = false;

    int size() const { return static_cast<int>(M.rows()); }
    Eigen::MatrixXd system_matrix() const {  // K + M_gd
        Eigen::MatrixXd S = K;
        S.diagonal() += mgd;
        return S;
    }
    const Eigen::LLT<Eigen::MatrixXd>& mass_llt() const;
    Eigen::VectorXd apply_mass_inverse(const Eigen::VectorXd& v) const;
    Eigen::VectorXd apply_Bh(const Eigen::VectorXd& u) const;

    /// Maximal semibound lambda_b of the subsidiary form; computed on first
    /// access by shifted inverse iteration through the stiffness factor.
    double semibound() const;

private:
    mutable std::optional<Eigen::LLT<Eigen::MatrixXd>> mass_llt_;
    mutable std::optional<double> semibound_;
};

/// Low-level constructor from pre-assembled pieces.
RealizedOperator discrete_realization(std::shared_ptr<const Mesh> mesh, Eigen::MatrixXd M_omega,
                                      StiffnessResult K, Eigen::VectorXd M_gamma_delta,
                                      MassMode mode);

/// Validates the coefficients and assembles the realization in one step.
RealizedOperator build_realized_operator(const Mesh& mesh, const CoefficientSet& coeffs,
                                         MassMode mode);

/// Weak co-normal trace: the boundary vector g with
///   <div Q grad u, v> + <Q grad u, grad v> = <g, tr v>  for discrete v,
/// where w stands in for -div Q grad u; discretely g = W^{-1} E (K u - M w).
Eigen::VectorXd weak_conormal_trace(const RealizedOperator& op, const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& w);

struct SecondOrderSolution {
    Eigen::VectorXd u;
    double residual = 0.0;        // relative residual of the linear system
    bool mean_zero_branch = false;
};

/// Solves (lambda M + K + M_gd) u = M f + E' W g. For lambda = 0 with
/// delta == 0 the Neumann problem is singular: compatible data are solved on
/// the mean-zero complement, incompatible data raise singular-system with the
/// compatibility defect (integral of f plus integral of g).
SecondOrderSolution solve_second_order(const RealizedOperator& op, double lambda,
                                       const Eigen::VectorXd& f, const Eigen::VectorXd& g);

}  // namespace wentzell
