#include <doctest.h>

#include "wentzell/errors.hpp"
#include "wentzell/mesh.hpp"

using namespace wentzell;

TEST_CASE("interval mesh: equispaced nodes and endpoint boundary") {
    Mesh m = build_interval_mesh(0.0, 1.0, 4);
    REQUIRE(m.node_count() == 5);
    double expect[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i < 5; ++i) CHECK(m.nodes[i][0] == doctest::Approx(expect[i]).epsilon(1e-15));
    REQUIRE(m.boundary_nodes.size() == 2);
    CHECK(m.boundary_nodes[0] == 0);
    CHECK(m.boundary_nodes[1] == 4);
    CHECK(m.boundary_weights[0] == 1.0);
    CHECK(m.boundary_weights[1] == 1.0);
}

TEST_CASE("interval mesh: measure and endpoints") {
    Mesh m2 = build_interval_mesh(0.0, 1.0, 2);
    CHECK(m2.domain_measure() == doctest::Approx(1.0).epsilon(1e-14));

    Mesh m8 = build_interval_mesh(-1.0, 1.0, 8);
    CHECK(m8.node_count() == 9);
    CHECK(m8.nodes.front()[0] == -1.0);
    CHECK(m8.nodes.back()[0] == 1.0);
}

TEST_CASE("mesh construction errors") {
    CHECK_THROWS_AS(build_interval_mesh(1.0, 0.0, 4), Error);
    CHECK_THROWS_AS(build_interval_mesh(0.0, 1.0, 1), Error);
    CHECK_THROWS_AS(build_rectangle_mesh(-1.0, 1.0, 4, 4), Error);
    try {
        build_interval_mesh(2.0, 2.0, 4);
        FAIL("expected invalid-domain");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_domain);
    }
}

TEST_CASE("rectangle mesh: perimeter weights") {
    Mesh m = build_rectangle_mesh(1.0, 1.0, 2, 2);
    CHECK(m.node_count() == 9);
    CHECK(m.boundary_count() == 8);
    CHECK(m.boundary_measure() == doctest::Approx(4.0).epsilon(1e-14));
    // corner node 0 receives half of each adjoining edge of length 0.5
    CHECK(m.boundary_weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.domain_measure() == doctest::Approx(1.0).epsilon(1e-14));

    Mesh m2 = build_rectangle_mesh(2.0, 1.0, 4, 2);
    CHECK(m2.boundary_measure() == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("boundary trace map restriction") {
    Mesh m = build_interval_mesh(0.0, 1.0, 4);
    TraceMap t = boundary_trace_map(m);
    Eigen::VectorXd u(5);
    u << 1, 2, 3, 4, 5;
    Eigen::VectorXd g = t.restrict_to_boundary(u);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == 5.0);

    Eigen::VectorXd c = Eigen::VectorXd::Constant(5, 3.25);
    Eigen::VectorXd gc = t.restrict_to_boundary(c);
    CHECK(gc[0] == 3.25);
    CHECK(gc[1] == 3.25);

    CHECK(t.size() == 2);
    CHECK(t.weight[0] == 1.0);
    CHECK(t.weight[1] == 1.0);
}

TEST_CASE("refinement leaves measures invariant") {
    for (int n : {8, 16, 32}) {
        Mesh m = build_interval_mesh(0.25, 1.75, n);
        CHECK(m.domain_measure() == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(m.boundary_measure() == doctest::Approx(2.0).epsilon(1e-12));
    }
    for (int n : {2, 4, 8}) {
        Mesh m = build_rectangle_mesh(1.5, 0.5, n, n);
        CHECK(m.domain_measure() == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(m.boundary_measure() == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("mesh json export mentions the basic fields") {
    Mesh m = build_interval_mesh(0.0, 1.0, 2);
    std::string j = m.to_json();
    CHECK(j.find("\"dimension\":1") != std::string::npos);
    CHECK(j.find("\"boundary_nodes\":[0,2]") != std::string::npos);
}
