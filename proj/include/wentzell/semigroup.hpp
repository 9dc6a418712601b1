#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wentzell/spectral.hpp"

namespace wentzell {

/// Time slice of the evolution in coupled coordinates (columns of `states`
/// are interior nodal vectors; boundary values are their traces).
struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXd states;   // N x times
    std::string method;
    bool truncated = false;
    double dropped_mass = 0.0;  // sum_{k>K} |<f, e_k>|^2 for a truncated basis

    Eigen::VectorXd state(int i) const { return states.col(i); }
};

/// Modal coefficients <f, e_k>_H of a coupled vector.
Eigen::VectorXd modal_coefficients(const WentzellSystem& system, const EigenDecomposition& decomp,
                                   const Eigen::VectorXd& f);

/// Semigroup action through the eigen-expansion:
/// T(t) f = sum_k exp(-lambda_k t) <f, e_k>_H e_k.
Trajectory evolve_spectral(const WentzellSystem& system, const EigenDecomposition& decomp,
                           const Eigen::VectorXd& f, const std::vector<double>& times);

/// theta-scheme: (M_H + theta dt A) u^{m+1} = (M_H - (1-theta) dt A) u^m.
/// theta = 1 is implicit Euler, theta = 0.5 Crank-Nicolson. Systems carrying
/// the exact constant kernel are stepped in deflated form: the kernel
/// coefficient is held constant (the exact invariant) and the M_H-orthogonal
/// complement is advanced through the stacked factor [L'; sqrt(theta dt) G],
/// avoiding the kernel drift a formed double-precision matrix would inject.
Trajectory step_theta(const WentzellSystem& system, const Eigen::VectorXd& f, double dt,
                      double theta, int nsteps);

struct SteadyState {
    Eigen::VectorXd state;    // coupled interior vector
    double value = 0.0;       // the constant (0 in the exponentially stable case)
    bool decays_to_zero = false;  // gamma or delta active: steady state is 0
};

/// Mean-value steady state: the H-projection of f onto the constants,
/// value = (int f1 + int beta^{-1} f2) / (|Omega| + int beta^{-1} dS).
SteadyState steady_state(const WentzellSystem& system, const ProductState& f);

struct PositivityReport {
    std::vector<double> times;
    std::vector<double> min_values;
    double epsilon = 0.0;
    double t0 = 0.0;           // first grid time after which min stays >= epsilon
    bool t0_finite = false;
    double dip_time = 0.0;     // most negative excursion
    int dip_node = -1;
    double dip_value = 0.0;
};

/// Scans node minima of T(t) f over a time grid for a nonnegative initial
/// datum. epsilon < 0 selects the default rule
/// 1e-3 * pairing(f) / <1,1>_H (the steady-state scale).
PositivityReport positivity_scan(const WentzellSystem& system, const EigenDecomposition& decomp,
                                 const ProductState& f, const std::vector<double>& t_grid,
                                 double epsilon = -1.0);

}  // namespace wentzell
