#include <doctest.h>

#include <random>

#include "wentzell/errors.hpp"
#include "wentzell/spectral.hpp"

using namespace wentzell;

namespace {
WentzellSystem make_system(int n, double gamma = 0.0, double delta = 0.0, double alpha = 1.0,
                           double beta = 1.0, int k = 1) {
    Mesh m = build_interval_mesh(0.0, 1.0, n);
    CoefficientSet c = CoefficientSet::reference();
    c.alpha = ScalarField(alpha);
    c.beta = ScalarField(beta);
    c.gamma = ScalarField(gamma);
    c.delta = ScalarField(delta);
    return build_wentzell_system(m, c, MassMode::consistent, k);
}
}  // namespace

TEST_CASE("product mass totals") {
    Mesh m = build_interval_mesh(0.0, 1.0, 8);
    CHECK(assemble_product_mass(m, ScalarField(1.0), MassMode::consistent).sum() ==
          doctest::Approx(3.0).epsilon(1e-13));
    CHECK(assemble_product_mass(m, ScalarField(2.0), MassMode::consistent).sum() ==
          doctest::Approx(2.0).epsilon(1e-13));
    Mesh r = build_rectangle_mesh(1.0, 1.0, 4, 4);
    CHECK(assemble_product_mass(r, ScalarField(1.0), MassMode::consistent).sum() ==
          doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("wentzell form: exact symmetry and kernel") {
    WentzellSystem sys = make_system(64);
    CHECK((sys.A - sys.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.size());
    double ainf = sys.A.cwiseAbs().rowwise().sum().maxCoeff();
    CHECK((sys.A * ones).cwiseAbs().maxCoeff() <= 1e-12 * ainf);
    CHECK(sys.structural_kernel);
}

TEST_CASE("wentzell form: alpha scales the fourth-order block") {
    WentzellSystem base = make_system(24, 0.5);
    WentzellSystem scaled = make_system(24, 0.5, 0.0, 2.0);
    // gamma block is independent of alpha; the rest doubles
    Eigen::VectorXd g1 = base.gamma_weights, g2 = scaled.gamma_weights;
    CHECK((g1 - g2).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd gblock = Eigen::MatrixXd::Zero(base.size(), base.size());
    for (int j = 0; j < base.trace().size(); ++j)
        gblock(base.trace().index[j], base.trace().index[j]) += g1[j];
    Eigen::MatrixXd lhs = scaled.A - gblock;
    Eigen::MatrixXd rhs = 2.0 * (base.A - gblock);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * rhs.cwiseAbs().maxCoeff());
}

TEST_CASE("form consistency through the realization") {
    WentzellSystem sys = make_system(32, 0.7, 0.3);
    Eigen::MatrixXd Malpha = assemble_mass(*sys.op->mesh, sys.op->mode);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 3; ++t) {
        Eigen::VectorXd x(sys.size());
        for (int i = 0; i < sys.size(); ++i) x[i] = nd(rng);
        double quad = x.dot(sys.A * x);
        Eigen::VectorXd bx = sys.op->apply_Bh(x);
        double direct = bx.dot(Malpha * bx);
        Eigen::VectorXd ex = sys.trace().restrict_to_boundary(x);
        for (int j = 0; j < sys.trace().size(); ++j)
            direct += sys.gamma_weights[j] * ex[j] * ex[j];
        CHECK(quad == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("self-adjointness in the product inner product") {
    WentzellSystem sys = make_system(32, -0.4, 0.2);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    Eigen::VectorXd x(sys.size()), y(sys.size());
    for (int i = 0; i < sys.size(); ++i) {
        x[i] = nd(rng);
        y[i] = nd(rng);
    }
    double xy = x.dot(sys.A * y), yx = y.dot(sys.A * x);
    CHECK(std::abs(xy - yx) <= 1e-12 * sys.A.cwiseAbs().maxCoeff());
}

TEST_CASE("higher-order path is restricted to the Laplacian") {
    Mesh m = build_interval_mesh(0.0, 1.0, 16);
    CoefficientSet c = CoefficientSet::reference();
    c.Q = MatrixField(ScalarField(2.0));
    CHECK_THROWS_AS(build_wentzell_system(m, c, MassMode::consistent, 2), Error);
    CoefficientSet cd = CoefficientSet::reference();
    cd.delta = ScalarField(0.5);
    CHECK_THROWS_AS(build_wentzell_system(m, cd, MassMode::consistent, 2), Error);
    CHECK_NOTHROW(build_wentzell_system(m, CoefficientSet::reference(), MassMode::consistent, 2));
}

TEST_CASE("product state coupling and projection") {
    WentzellSystem sys = make_system(32);
    const TraceMap& tr = sys.trace();
    Eigen::VectorXd u(sys.size());
    for (int i = 0; i < sys.size(); ++i) u[i] = 0.3 * i;

    ProductState coupled = make_coupled(tr, u);
    CHECK(coupled.is_coupled(tr));
    ProductState same = project_to_coupled(sys, coupled);
    CHECK((same.u1 - coupled.u1).cwiseAbs().maxCoeff() < 1e-12 * u.cwiseAbs().maxCoeff());

    // decoupled data: zero interior, unit boundary
    ProductState f;
    f.u1 = Eigen::VectorXd::Zero(sys.size());
    f.u2 = Eigen::VectorXd::Ones(tr.size());
    CHECK_FALSE(f.is_coupled(tr));
    ProductState v = project_to_coupled(sys, f);
    CHECK(v.is_coupled(tr));
    // projections are contractive in the H-norm
    double fn = f.u1.dot(sys.op->M * f.u1) + sys.beta_weights.dot(f.u2.cwiseProduct(f.u2));
    double vn = sys.h_norm(v.u1);
    CHECK(vn * vn <= fn * (1 + 1e-12));

    // idempotence
    ProductState vv = project_to_coupled(sys, v);
    CHECK((vv.u1 - v.u1).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, v.u1.cwiseAbs().maxCoeff()));

    // residual is H-orthogonal to every coupled state
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 4; ++t) {
        Eigen::VectorXd w(sys.size());
        for (int i = 0; i < sys.size(); ++i) w[i] = nd(rng);
        Eigen::VectorXd Ew = tr.restrict_to_boundary(w);
        double inner = w.dot(sys.op->M * (f.u1 - v.u1)) +
                       sys.beta_weights.dot(Ew.cwiseProduct(f.u2 - v.u2));
        CHECK(std::abs(inner) < 1e-10);
    }
}

TEST_CASE("lumped mode assembles a working system") {
    Mesh m = build_interval_mesh(0.0, 1.0, 256);
    WentzellSystem lumped =
        build_wentzell_system(m, CoefficientSet::reference(), MassMode::lumped);
    CHECK((lumped.A - lumped.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(lumped.structural_kernel);
    CHECK(lumped.total_mass() == doctest::Approx(3.0).epsilon(1e-12));
    EigenDecomposition dec = eig_generalized(lumped, 3);
    CHECK(std::abs(dec.eigenvalues[0]) <= 1e-10 * dec.eigenvalues[1]);
    // lumped discretization converges to the same spectrum, looser tolerance
    CHECK(dec.eigenvalues[1] == doctest::Approx(19.2997126).epsilon(1e-3));
}

TEST_CASE("conserved pairing of simple states") {
    WentzellSystem sys = make_system(16);
    ProductState ones;
    ones.u1 = Eigen::VectorXd::Ones(sys.size());
    ones.u2 = Eigen::VectorXd::Ones(2);
    CHECK(conserved_pairing(sys, ones) == doctest::Approx(3.0).epsilon(1e-13));
}
