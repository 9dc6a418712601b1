#pragma once

#include <Eigen/Dense>

#include "wentzell/product_system.hpp"

namespace wentzell {

/// Ascending M_H-orthonormal eigenpairs of (A, M_H).
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXd eigenvectors;   // N x count, M_H-orthonormal columns
    Eigen::VectorXd residuals;      // ||A e - lambda M_H e|| / ||A||
    bool kernel_snapped = false;    // first vector replaced by 1/||1||_{M_H}

    int count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Computes the `count` smallest eigenpairs. Systems with nonnegative
/// boundary gamma are solved through the SVD of the Cholesky-reduced factor
/// G L^{-T} (lambda = sigma^2), which resolves the small eigenvalues far
/// below the eps*lambda_max floor of a formed-matrix solver; indefinite
/// systems (negative gamma) use the dense generalized symmetric solver.
EigenDecomposition eig_generalized(const WentzellSystem& system, int count);

/// Number of eigenvalues with |lambda| <= tol * max(1, lambda_last).
int kernel_dimension(const EigenDecomposition& decomp, double tol);

/// Transcendental oracle for the interval (0, length) with constant
/// coefficients: eigenvalues are the roots of the 4x4 boundary determinant of
///   q^2 a u'''' = lambda u,
///   nu q u' + d u = 0                                (Robin row)
///   -b (nu q w' + d w) + (g - lambda) u = 0,  w = a q u''   (dynamic row)
/// at both endpoints (nu = -1 at 0, +1 at length). Roots are located by
/// sign-change bisection over a geometric lambda grid.
struct OracleResult {
    Eigen::VectorXd eigenvalues;
    bool complete = true;          // found the requested count below the ceiling
};

OracleResult oracle_eigenvalues_interval(double q, double a, double b, double g, double d,
                                         double length, int count);

/// Determinant evaluated at a single lambda > 0 (rows normalized); exposed
/// for tests of the root finder.
double oracle_determinant(double lambda, double q, double a, double b, double g, double d,
                          double length);

}  // namespace wentzell
