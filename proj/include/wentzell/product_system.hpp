#pragma once

#include <memory>

#include <Eigen/Dense>

#include "wentzell/elliptic.hpp"

namespace wentzell {

/// State in the discrete product space: interior nodal values plus boundary
/// values. The state is "coupled" when u2 equals the trace of u1.
struct ProductState {
    Eigen::VectorXd u1;
    Eigen::VectorXd u2;

    bool is_coupled(const TraceMap& trace, double tol = 1e-12) const {
        if (u2.size() != trace.size()) return false;
        Eigen::VectorXd d = u2 - trace.restrict_to_boundary(u1);
        return d.cwiseAbs().maxCoeff() <= tol * std::max(1.0, u1.cwiseAbs().maxCoeff());
    }
};

inline ProductState make_coupled(const TraceMap& trace, Eigen::VectorXd u1) {
    ProductState s;
    s.u2 = trace.restrict_to_boundary(u1);
    s.u1 = std::move(u1);
    return s;
}

/// Product-space mass M_H = M_omega + E' diag(beta^{-1} w) E.
Eigen::MatrixXd assemble_product_mass(const Mesh& mesh, const ScalarField& beta, MassMode mode);

/// The Wentzell operator in coupled coordinates. A is assembled as
/// G'G + diag(cneg): G stacks the fourth-order factor L_alpha' B_h (with
/// B_h^{2k} on the higher-order path) and the square roots of nonnegative
/// boundary gamma-weights; negative gamma-weights stay in the diagonal cneg.
/// The stacked factor keeps A exactly symmetric and positive semidefinite up
/// to cneg, and drives the accurate eigensolver and time stepper.
class WentzellSystem {
public:
    std::shared_ptr<const RealizedOperator> op;
    int order_power = 1;
    Eigen::MatrixXd A;
    Eigen::MatrixXd M_H;
    Eigen::MatrixXd G;              // stacked factor
    Eigen::VectorXd cneg;           // nonpositive diagonal (negative gamma part)
    Eigen::VectorXd gamma_weights;  // beta^{-1} gamma w at boundary nodes
    Eigen::VectorXd beta_weights;   // beta^{-1} w at boundary nodes (W_beta diagonal)
    bool structural_kernel = false; // gamma == 0 and delta == 0 exactly

    int size() const { return static_cast<int>(M_H.rows()); }
    const TraceMap& trace() const { return op->trace; }
    const Eigen::LLT<Eigen::MatrixXd>& mass_llt() const;

    Eigen::VectorXd apply_A(const Eigen::VectorXd& u) const {
        Eigen::VectorXd r = G.transpose() * (G * u);
        r += cneg.cwiseProduct(u);
        return r;
    }
    double h_norm(const Eigen::VectorXd& u) const { return std::sqrt(u.dot(M_H * u)); }
    double h_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
        return u.dot(M_H * v);
    }
    /// Conserved pairing <1, u>_H of a coupled interior vector.
    double pairing(const Eigen::VectorXd& u) const { return u.dot(M_H.rowwise().sum()); }
    double total_mass() const { return M_H.sum(); }

private:
    mutable std::optional<Eigen::LLT<Eigen::MatrixXd>> mass_llt_;
};

/// Assembles the coupled-coordinate form matrix. k = 1 is the fourth-order
/// operator built from op's realization; k >= 2 uses B_h^{2k} and requires
/// Q = I and delta = 0.
WentzellSystem assemble_wentzell_form(std::shared_ptr<const RealizedOperator> op,
                                      const ScalarField& alpha, const ScalarField& gamma,
                                      const ScalarField& beta, int k = 1);

/// Validates coefficients, builds the realization and the Wentzell system.
WentzellSystem build_wentzell_system(const Mesh& mesh, const CoefficientSet& coeffs, MassMode mode,
                                     int k = 1);

/// H-orthogonal projection of a possibly decoupled state onto the coupled
/// subspace: (M_omega + E' W_beta E) v1 = M_omega f1 + E' W_beta f2.
ProductState project_to_coupled(const WentzellSystem& system, const ProductState& f);

/// Pairing <1, f>_H = int f1 + int beta^{-1} f2 of a general product state.
double conserved_pairing(const WentzellSystem& system, const ProductState& f);

}  // namespace wentzell
