#include <cmath>

#include <doctest.h>

#include "wentzell/config.hpp"
#include "wentzell/errors.hpp"
#include "wentzell/expr.hpp"

using namespace wentzell;

TEST_CASE("expression parsing and evaluation") {
    CHECK(Expression::parse("2+3*4^2").eval(0) == doctest::Approx(50.0));
    CHECK(Expression::parse("cos(pi*x)").eval(1.0) == doctest::Approx(-1.0));
    CHECK(Expression::parse("x^2 - y").eval(3.0, 4.0) == doctest::Approx(5.0));
    CHECK(Expression::parse("-x + exp(0)").eval(2.0) == doctest::Approx(-1.0));
    CHECK(Expression::parse("sin(x)/x").eval(1e-3) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(Expression::parse("2^3^1").eval(0) == doctest::Approx(8.0));
    CHECK(Expression::parse("(1+2)*(3-4)").eval(0) == doctest::Approx(-3.0));
}

TEST_CASE("expression errors") {
    CHECK_THROWS_AS(Expression::parse("foo(x)"), Error);
    CHECK_THROWS_AS(Expression::parse("1+"), Error);
    CHECK_THROWS_AS(Expression::parse("z*2"), Error);
    CHECK_THROWS_AS(Expression::parse("cos 3"), Error);
}

TEST_CASE("config round-trips") {
    RunConfig c;
    c.domain_type = "interval";
    c.a = 0.0;
    c.b = 2.0;
    c.n = 64;
    c.coefficients.alpha = ScalarField::expression("1 + x^2");
    c.coefficients.gamma = ScalarField(-0.5);
    c.eigen_count = 7;
    c.scheme = "theta";
    c.theta = 0.75;
    c.seed = 42;
    RunConfig back = RunConfig::from_json_text(c.to_json_text());
    CHECK(back == c);
    RunConfig again = RunConfig::from_json_text(back.to_json_text());
    CHECK(again == back);
}

TEST_CASE("config per-cell table round-trips") {
    RunConfig c;
    Eigen::VectorXd t(3);
    t << 1.0, 2.0, 3.0;
    c.coefficients.alpha = ScalarField::per_cell(t);
    RunConfig back = RunConfig::from_json_text(c.to_json_text());
    CHECK(back == c);
    CHECK(back.coefficients.alpha.table()[2] == 3.0);
}

TEST_CASE("strict parsing rejects unknown keys") {
    CHECK_THROWS_AS(RunConfig::from_json_text("{\"domian\": {}}"), Error);
    CHECK_THROWS_AS(RunConfig::from_json_text("{\"domain\": {\"typ\": \"interval\"}}"), Error);
    CHECK_THROWS_AS(RunConfig::from_json_text("{\"scheme\": {\"type\": \"rk4\"}}"), Error);
    CHECK_THROWS_AS(RunConfig::from_json_text("not json"), Error);
}

TEST_CASE("time grids") {
    RunConfig c;
    c.t_start = 1e-3;
    c.t_stop = 1.0;
    c.t_points = 4;
    c.t_spacing = "log";
    auto ts = c.time_grid();
    REQUIRE(ts.size() == 4);
    CHECK(ts[0] == doctest::Approx(1e-3));
    CHECK(ts[3] == doctest::Approx(1.0));
    CHECK(ts[1] / ts[0] == doctest::Approx(ts[2] / ts[1]).epsilon(1e-12));

    c.t_spacing = "linear";
    auto tl = c.time_grid();
    CHECK(tl[2] - tl[1] == doctest::Approx(tl[1] - tl[0]).epsilon(1e-12));

    c.t_explicit = {0.5, 1.5};
    CHECK(c.time_grid() == std::vector<double>{0.5, 1.5});
}
