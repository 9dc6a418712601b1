#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "wentzell/elliptic.hpp"
#include "wentzell/errors.hpp"

using namespace wentzell;

namespace {
RealizedOperator reference_op(int n, double delta = 0.0, MassMode mode = MassMode::consistent) {
    Mesh m = build_interval_mesh(0.0, 1.0, n);
    CoefficientSet c = CoefficientSet::reference();
    c.delta = ScalarField(delta);
    return build_realized_operator(m, c, mode);
}
}  // namespace

TEST_CASE("consistent mass on (0,1) with two elements") {
    Mesh m = build_interval_mesh(0.0, 1.0, 2);
    Eigen::MatrixXd M = assemble_mass(m, MassMode::consistent);
    Eigen::Matrix3d expect;
    expect << 2, 1, 0, 1, 4, 1, 0, 1, 2;
    expect /= 12.0;
    CHECK((M - expect).cwiseAbs().maxCoeff() < 1e-15);

    Eigen::MatrixXd L = assemble_mass(m, MassMode::lumped);
    CHECK(L(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(L(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(L(2, 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(L.diagonal().sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mass sums to the domain measure") {
    for (int n : {3, 17}) {
        Mesh m = build_interval_mesh(-0.5, 2.0, n);
        Eigen::MatrixXd M = assemble_mass(m, MassMode::consistent);
        CHECK(M.sum() == doctest::Approx(2.5).epsilon(1e-12));
    }
    Mesh r = build_rectangle_mesh(1.5, 2.0, 3, 4);
    CHECK(assemble_mass(r, MassMode::consistent).sum() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("stiffness on (0,1) with two elements") {
    Mesh m = build_interval_mesh(0.0, 1.0, 2);
    StiffnessResult K = assemble_stiffness(m, MatrixField(ScalarField(1.0)));
    Eigen::Matrix3d expect;
    expect << 2, -2, 0, -2, 4, -2, 0, -2, 2;
    CHECK((K.K - expect).cwiseAbs().maxCoeff() < 1e-14);
    // factor reproduces K
    CHECK((K.factor_rows.transpose() * K.factor_rows - K.K).cwiseAbs().maxCoeff() < 1e-13);

    StiffnessResult K3 = assemble_stiffness(m, MatrixField(ScalarField(3.0)));
    CHECK((K3.K - 3.0 * K.K).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("stiffness annihilates constants") {
    Mesh m = build_interval_mesh(0.0, 1.0, 9);
    StiffnessResult K = assemble_stiffness(m, MatrixField(ScalarField::expression("1 + x")));
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.node_count());
    CHECK((K.K * ones).cwiseAbs().maxCoeff() < 1e-12);

    Mesh r = build_rectangle_mesh(1.0, 1.0, 4, 4);
    CoefficientSet c;
    c.Q = MatrixField(ScalarField(2.0), ScalarField(0.5), ScalarField(1.0));
    StiffnessResult Kr = assemble_stiffness(r, c.Q);
    Eigen::VectorXd onesr = Eigen::VectorXd::Ones(r.node_count());
    CHECK((Kr.K * onesr).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((Kr.K - Kr.K.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boundary mass examples") {
    Mesh m = build_interval_mesh(0.0, 1.0, 4);
    Eigen::VectorXd d1 = assemble_boundary_mass(m, ScalarField(1.0));
    CHECK(d1[0] == 1.0);
    CHECK(d1[4] == 1.0);
    CHECK(d1.sum() == 2.0);

    Eigen::VectorXd d2 = assemble_boundary_mass(m, ScalarField::expression("2 - 2*x"));
    CHECK(d2[0] == doctest::Approx(2.0));
    CHECK(d2[4] == doctest::Approx(0.0));

    Mesh r = build_rectangle_mesh(1.0, 1.0, 2, 2);
    CHECK(assemble_boundary_mass(r, ScalarField(1.0)).sum() == doctest::Approx(4.0));
}

TEST_CASE("discrete realization: kernel, symmetry, semibound") {
    RealizedOperator op = reference_op(16);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.size());
    CHECK((op.apply_Bh(ones)).cwiseAbs().maxCoeff() < 1e-12);
    // M B_h = K + M_gd is symmetric
    Eigen::MatrixXd S = op.system_matrix();
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(op.semibound() == doctest::Approx(0.0).epsilon(1e-10));

    RealizedOperator robin = reference_op(16, 0.7);
    CHECK(robin.semibound() > 0.0);
}

TEST_CASE("semibound is nondecreasing in delta") {
    double prev = -1.0;
    for (double d : {0.0, 0.3, 0.6, 1.2}) {
        RealizedOperator op = reference_op(24, d);
        double sb = op.semibound();
        CHECK(sb >= prev - 1e-12);
        prev = sb;
    }
}

TEST_CASE("second generalized eigenvalue of (K, M) approaches pi^2") {
    double prev_err = 1e300;
    for (int n : {16, 32, 64}) {
        RealizedOperator op = reference_op(n);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(op.K, op.M);
        double mu2 = es.eigenvalues()[1];
        double err = std::abs(mu2 - M_PI * M_PI);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-2);
}

TEST_CASE("weak co-normal trace") {
    RealizedOperator op = reference_op(8);
    const Mesh& m = *op.mesh;
    Eigen::VectorXd x(m.node_count()), zero = Eigen::VectorXd::Zero(m.node_count());
    for (int i = 0; i < m.node_count(); ++i) x[i] = m.nodes[i][0];

    Eigen::VectorXd g = weak_conormal_trace(op, x, zero);
    CHECK(g[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::VectorXd c = Eigen::VectorXd::Constant(m.node_count(), 2.5);
    Eigen::VectorXd gc = weak_conormal_trace(op, c, zero);
    CHECK(gc.cwiseAbs().maxCoeff() < 1e-13);

    Eigen::VectorXd xsq(m.node_count()), w = Eigen::VectorXd::Constant(m.node_count(), -2.0);
    for (int i = 0; i < m.node_count(); ++i) xsq[i] = x[i] * x[i];
    Eigen::VectorXd g2 = weak_conormal_trace(op, xsq, w);
    CHECK(g2[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g2[1] == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(weak_conormal_trace(op, x.head(3), zero), Error);
}

TEST_CASE("discrete Green identity") {
    RealizedOperator op = reference_op(32);
    const int N = op.size();
    Eigen::VectorXd u(N), v(N);
    for (int i = 0; i < N; ++i) {
        u[i] = std::sin(3.0 * i) + 0.2 * i;
        v[i] = std::cos(2.0 * i);
    }
    Eigen::VectorXd w = op.apply_Bh(u);
    Eigen::VectorXd g = weak_conormal_trace(op, u, w);
    Eigen::VectorXd Ev = op.trace.restrict_to_boundary(v);
    double lhs = v.dot(op.K * u);
    double rhs = Ev.dot(op.trace.weight.cwiseProduct(g)) + v.dot(op.M * w);
    double scale = std::abs(lhs) + std::abs(rhs) + 1.0;
    CHECK(std::abs(lhs - rhs) / scale < 1e-10);
}

TEST_CASE("stationary solves") {
    RealizedOperator op = reference_op(32);
    const int N = op.size();
    Eigen::VectorXd zero_g = Eigen::VectorXd::Zero(2);

    // constants solve (1 - div grad) u = 1 with zero flux
    SecondOrderSolution s1 = solve_second_order(op, 1.0, Eigen::VectorXd::Ones(N), zero_g);
    CHECK((s1.u.array() - 1.0).abs().maxCoeff() < 1e-11);
    CHECK(s1.residual < 1e-10);

    SecondOrderSolution s0 = solve_second_order(op, 1.0, Eigen::VectorXd::Zero(N), zero_g);
    CHECK(s0.u.cwiseAbs().maxCoeff() == 0.0);

    // incompatible pure-Neumann data report the defect
    try {
        solve_second_order(op, 0.0, Eigen::VectorXd::Ones(N), zero_g);
        FAIL("expected singular-system");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular_system);
        CHECK(std::string(e.what()).find("defect") != std::string::npos);
    }

    // compatible mean-zero data: -u'' = x - 1/2, exact u = -x^3/6 + x^2/4 - 1/24
    Eigen::VectorXd f(N);
    for (int i = 0; i < N; ++i) f[i] = op.mesh->nodes[i][0] - 0.5;
    SecondOrderSolution sm = solve_second_order(op, 0.0, f, zero_g);
    CHECK(sm.mean_zero_branch);
    CHECK(sm.residual < 1e-10);
    CHECK(std::abs(Eigen::VectorXd::Ones(N).dot(op.M * sm.u)) < 1e-12);
    double worst = 0.0;
    for (int i = 0; i < N; ++i) {
        double x = op.mesh->nodes[i][0];
        double exact = -x * x * x / 6.0 + x * x / 4.0 - 1.0 / 24.0;
        worst = std::max(worst, std::abs(sm.u[i] - exact));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("robin trace of stationary solutions matches the boundary datum") {
    // weak trace of a solve with datum g reproduces g - delta * (E u)
    Mesh m = build_interval_mesh(0.0, 1.0, 64);
    CoefficientSet c = CoefficientSet::reference();
    c.delta = ScalarField(0.4);
    RealizedOperator op = build_realized_operator(m, c, MassMode::consistent);
    Eigen::VectorXd f(op.size());
    for (int i = 0; i < op.size(); ++i) f[i] = std::exp(m.nodes[i][0]);
    Eigen::Vector2d g(0.3, -0.2);
    SecondOrderSolution sol = solve_second_order(op, 1.0, f, g);
    // w = M^{-1}(M f - lambda M u) recovers -div Q grad u from the equation
    Eigen::VectorXd w = f - sol.u;
    Eigen::VectorXd tr = weak_conormal_trace(op, sol.u, w);
    Eigen::VectorXd Eu = op.trace.restrict_to_boundary(sol.u);
    for (int j = 0; j < 2; ++j)
        CHECK(tr[j] == doctest::Approx(g[j] - 0.4 * Eu[j]).epsilon(1e-9));
}

TEST_CASE("lumped mode realization") {
    RealizedOperator op = reference_op(16, 0.0, MassMode::lumped);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.size());
    CHECK((op.apply_Bh(ones)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(op.M.diagonal().minCoeff() > 0.0);
    SecondOrderSolution s = solve_second_order(op, 1.0, ones, Eigen::Vector2d::Zero());
    CHECK((s.u.array() - 1.0).abs().maxCoeff() < 1e-11);
}
