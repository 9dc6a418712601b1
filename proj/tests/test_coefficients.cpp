#include <doctest.h>

#include "wentzell/coefficients.hpp"
#include "wentzell/errors.hpp"

using namespace wentzell;

namespace {
const HypothesisCheck& find_check(const ValidationReport& rep, const std::string& needle) {
    for (const auto& c : rep.checks)
        if (c.name.find(needle) != std::string::npos) return c;
    throw std::runtime_error("check not found: " + needle);
}
}  // namespace

TEST_CASE("reference coefficients satisfy every hypothesis") {
    Mesh m = build_interval_mesh(0.0, 1.0, 8);
    ValidationReport rep = validate_coefficients(m, CoefficientSet::reference());
    CHECK(rep.all_pass);
}

TEST_CASE("negative delta is flagged") {
    Mesh m = build_interval_mesh(0.0, 1.0, 8);
    CoefficientSet c = CoefficientSet::reference();
    c.delta = ScalarField(-1.0);
    ValidationReport rep = validate_coefficients(m, c);
    CHECK_FALSE(rep.all_pass);
    CHECK_FALSE(find_check(rep, "delta >= 0").pass);
    CHECK(find_check(rep, "delta >= 0").margin == doctest::Approx(-1.0));
    CHECK_THROWS_AS(require_valid(m, c), Error);
}

TEST_CASE("indefinite Q fails positive definiteness") {
    // eigenvalues of [[1,2],[2,1]] are 3 and -1
    Mesh m = build_rectangle_mesh(1.0, 1.0, 2, 2);
    CoefficientSet c = CoefficientSet::reference();
    c.Q = MatrixField(ScalarField(1.0), ScalarField(2.0), ScalarField(1.0));
    ValidationReport rep = validate_coefficients(m, c);
    CHECK_FALSE(rep.all_pass);
    const auto& chk = find_check(rep, "positive definite");
    CHECK_FALSE(chk.pass);
    CHECK(chk.margin == doctest::Approx(-1.0 - c.kappa_q).epsilon(1e-12));
}

TEST_CASE("validation is monotone in eta") {
    Mesh m = build_interval_mesh(0.0, 1.0, 8);
    CoefficientSet c = CoefficientSet::reference();
    bool prev_pass = true;
    for (double eta : {0.1, 0.5, 0.9, 1.0, 1.1, 2.0}) {
        c.eta = eta;
        bool pass = validate_coefficients(m, c).all_pass;
        if (!prev_pass) CHECK_FALSE(pass);  // tightening never turns fail into pass
        prev_pass = pass;
    }
}

TEST_CASE("principal symbol values") {
    Mesh m1 = build_interval_mesh(0.0, 1.0, 4);
    SymbolReport rep = check_principal_symbol(CoefficientSet::reference(), m1, M_PI / 2, 8);
    CHECK(rep.elliptic);
    CHECK(rep.min_symbol == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.bound_constant > 0.0);

    CoefficientSet c = CoefficientSet::reference();
    c.Q = MatrixField(ScalarField(2.0));
    c.alpha = ScalarField(3.0);
    SymbolReport rep2 = check_principal_symbol(c, m1, M_PI / 2, 8);
    CHECK(rep2.min_symbol == doctest::Approx(12.0).epsilon(1e-14));

    // direct symbol evaluation: Q = diag(1,4), xi = (0,1)
    Eigen::Matrix2d Q;
    Q << 1, 0, 0, 4;
    CHECK(principal_symbol(Q, 1.0, Eigen::Vector2d(0, 1)) == doctest::Approx(16.0));
}

TEST_CASE("principal symbol homogeneity of degree 4") {
    Eigen::Matrix2d Q;
    Q << 2.0, 0.3, 0.3, 1.5;
    Eigen::Vector2d xi(0.6, -0.8);
    double base = principal_symbol(Q, 1.7, xi);
    for (double s : {0.5, 2.0, 3.7}) {
        double scaled = principal_symbol(Q, 1.7, s * xi);
        CHECK(scaled == doctest::Approx(std::pow(s, 4) * base).epsilon(1e-12));
    }
}

TEST_CASE("nonpositive symbol raises not-elliptic") {
    Mesh m = build_interval_mesh(0.0, 1.0, 4);
    CoefficientSet c = CoefficientSet::reference();
    c.alpha = ScalarField(-1.0);  // alpha < 0 kills the symbol sign
    CHECK_THROWS_AS(check_principal_symbol(c, m, M_PI / 2, 8), Error);
    CHECK_THROWS_AS(check_principal_symbol(CoefficientSet::reference(), m, 3.5, 8), Error);
}

TEST_CASE("per-cell tables evaluate on cells but not points") {
    Eigen::VectorXd t(4);
    t << 1, 2, 3, 4;
    ScalarField f = ScalarField::per_cell(t);
    CHECK(f.on_cell(2, 0.6) == 3.0);
    CHECK_THROWS_AS(f.at(0.5), Error);
    CHECK_THROWS_AS(f.on_cell(9, 0.5), Error);
}
