#include <doctest.h>

#include "wentzell/errors.hpp"
#include "wentzell/spectral.hpp"

using namespace wentzell;

namespace {

WentzellSystem make_system(int n, double gamma = 0.0, double delta = 0.0, double alpha = 1.0) {
    Mesh m = build_interval_mesh(0.0, 1.0, n);
    CoefficientSet c = CoefficientSet::reference();
    c.alpha = ScalarField(alpha);
    c.gamma = ScalarField(gamma);
    c.delta = ScalarField(delta);
    return build_wentzell_system(m, c, MassMode::consistent);
}

// frozen values of the boundary determinant roots for q=a=b=1, g=d=0, L=1,
// computed with an independent implementation of the same determinant
// (64-per-decade scan + geometric bisection)
const double kRefRoots[6] = {0.0,          19.2997126,   649.747699,
                             4247.64894,   15509.9746,   41442.7928};

}  // namespace

TEST_CASE("identity operator has unit spectrum") {
    WentzellSystem sys = make_system(16);
    // replace the factor so that A = G'G = M_H
    sys.G = sys.mass_llt().matrixU();
    sys.A = sys.G.transpose() * sys.G;
    sys.cneg.setZero();
    sys.structural_kernel = false;
    EigenDecomposition dec = eig_generalized(sys, sys.size());
    CHECK((dec.eigenvalues.array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("reference spectrum: kernel plus oracle agreement") {
    WentzellSystem sys = make_system(256);
    EigenDecomposition dec = eig_generalized(sys, 6);
    CHECK(std::abs(dec.eigenvalues[0]) <= 1e-10 * dec.eigenvalues[1]);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.size());
    double cosv = std::abs(sys.h_inner(dec.eigenvectors.col(0), ones)) /
                  (sys.h_norm(dec.eigenvectors.col(0)) * sys.h_norm(ones));
    CHECK(1.0 - cosv <= 1e-8);
    for (int k = 1; k < 6; ++k)
        CHECK(dec.eigenvalues[k] ==
              doctest::Approx(kRefRoots[k]).epsilon(5e-3));  // 0.5 percent
    // matches the oracle's own roots
    OracleResult orc = oracle_eigenvalues_interval(1, 1, 1, 0, 0, 1.0, 6);
    REQUIRE(orc.complete);
    for (int k = 1; k < 6; ++k)
        CHECK(orc.eigenvalues[k] == doctest::Approx(kRefRoots[k]).epsilon(1e-8));
}

TEST_CASE("decomposition invariants") {
    WentzellSystem sys = make_system(128, 0.3, 0.2);
    EigenDecomposition dec = eig_generalized(sys, 12);
    // ascending
    for (int k = 1; k < dec.count(); ++k) CHECK(dec.eigenvalues[k] >= dec.eigenvalues[k - 1]);
    // M_H-orthonormal
    Eigen::MatrixXd Gram =
        dec.eigenvectors.transpose() * (sys.M_H * dec.eigenvectors);
    CHECK((Gram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-10);
    // residuals
    CHECK(dec.residuals.maxCoeff() < 1e-9);
    // Rayleigh consistency
    for (int k = 0; k < dec.count(); ++k) {
        Eigen::VectorXd e = dec.eigenvectors.col(k);
        double rq = e.dot(sys.apply_A(e)) / e.dot(sys.M_H * e);
        CHECK(std::abs(rq - dec.eigenvalues[k]) <=
              1e-10 * std::max(1.0, std::abs(dec.eigenvalues[k])));
    }
}

TEST_CASE("kernel dichotomy and kernel_dimension") {
    EigenDecomposition ref = eig_generalized(make_system(64), 6);
    CHECK(kernel_dimension(ref, 1e-10) == 1);

    EigenDecomposition robin = eig_generalized(make_system(64, 0.0, 0.5), 6);
    CHECK(robin.eigenvalues[0] > 0.0);
    CHECK(kernel_dimension(robin, 1e-10) == 0);

    EigenDecomposition gneg = eig_generalized(make_system(64, -1.0, 0.0), 6);
    CHECK(gneg.eigenvalues[0] < 0.0);
    CHECK(kernel_dimension(gneg, 1e-10) == 0);
}

TEST_CASE("eigen count preconditions") {
    WentzellSystem sys = make_system(16);
    CHECK_THROWS_AS(eig_generalized(sys, 0), Error);
    CHECK_THROWS_AS(eig_generalized(sys, sys.size() + 1), Error);
}

TEST_CASE("spectrum scales linearly in alpha") {
    EigenDecomposition base = eig_generalized(make_system(48), 5);
    EigenDecomposition scaled = eig_generalized(make_system(48, 0.0, 0.0, 3.0), 5);
    for (int k = 1; k < 5; ++k)
        CHECK(scaled.eigenvalues[k] ==
              doctest::Approx(3.0 * base.eigenvalues[k]).epsilon(1e-12));
}

TEST_CASE("eigensolve is deterministic") {
    EigenDecomposition a = eig_generalized(make_system(32, 0.2, 0.1), 8);
    EigenDecomposition b = eig_generalized(make_system(32, 0.2, 0.1), 8);
    CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("oracle: zero root and parameter scaling") {
    OracleResult orc = oracle_eigenvalues_interval(1, 1, 1, 0, 0, 1.0, 4);
    REQUIRE(orc.complete);
    CHECK(orc.eigenvalues[0] == 0.0);

    OracleResult four = oracle_eigenvalues_interval(1, 4, 1, 0, 0, 1.0, 4);
    for (int k = 1; k < 4; ++k)
        CHECK(four.eigenvalues[k] ==
              doctest::Approx(4.0 * orc.eigenvalues[k]).epsilon(1e-9));
}

TEST_CASE("oracle: Robin shift removes the kernel") {
    OracleResult orc = oracle_eigenvalues_interval(1, 1, 1, 0, 0.5, 1.0, 3);
    REQUIRE(orc.eigenvalues.size() >= 1);
    CHECK(orc.eigenvalues[0] > 0.0);
}

TEST_CASE("oracle preconditions") {
    CHECK_THROWS_AS(oracle_eigenvalues_interval(0, 1, 1, 0, 0, 1.0, 3), Error);
    CHECK_THROWS_AS(oracle_eigenvalues_interval(1, 1, 1, 0, -0.5, 1.0, 3), Error);
    CHECK_THROWS_AS(oracle_eigenvalues_interval(1, 1, 1, 0, 0, 1.0, 0), Error);
}

TEST_CASE("oracle cross-validation against the refined discretization") {
    // lambda_2 of the n = 2048 discrete problem vs the determinant root
    Mesh m = build_interval_mesh(0.0, 1.0, 2048);
    WentzellSystem sys = build_wentzell_system(m, CoefficientSet::reference(),
                                               MassMode::consistent);
    EigenDecomposition dec = eig_generalized(sys, 2);
    OracleResult orc = oracle_eigenvalues_interval(1, 1, 1, 0, 0, 1.0, 2);
    CHECK(dec.eigenvalues[1] == doctest::Approx(orc.eigenvalues[1]).epsilon(1e-6));
}
