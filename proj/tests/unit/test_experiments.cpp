#include <doctest.h>

#include <cmath>

#include <osb/experiments.hpp>

using namespace osb;

namespace {
Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}
}  // namespace

TEST_CASE("shadow experiment: circle error matches the closed-form angle defect") {
    // both maps rotate; the angle defect is 4 asin(1/r) - 4/r ~ 2/(3 r^3),
    // so E(r) ~ 2/(3 r^2)
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    const auto rep = shadow_experiment(circle, {10, 20, 40}, 16, 3);
    const Table* t = rep.find_table("per_radius");
    REQUIRE(t != nullptr);
    for (const auto& row : t->rows) {
        const double r = row[0], e = row[1];
        const double defect = 4.0 * std::asin(1.0 / r) - 4.0 / r;
        const double expected = 2.0 * r * std::sin(defect / 2.0);
        CHECK(e == doctest::Approx(expected).epsilon(1e-4));
    }
}

TEST_CASE("shadow experiment: constant width verdicts pass") {
    const auto cw = make_body(BodySpec::constant_width_spec(0.1));
    const auto rep = shadow_experiment(cw, {10, 20, 40, 80, 160}, 16, 7);
    CHECK(rep.all_pass());
}

TEST_CASE("shadow experiment: the (6C+C~)/r envelope holds even for the symmetric 4d ellipsoid") {
    const auto e4 = make_body(BodySpec::ellipsoid_spec({1.0, 0.8, 1.2, 0.9}));
    const auto rep = shadow_experiment(e4, {10, 20, 40, 80, 160}, 8, 7);
    for (const auto& v : rep.verdicts) {
        if (v.name == "c_over_r_envelope") CHECK(v.pass);
        if (v.name == "halving_per_doubling") CHECK(v.pass);
    }
}

TEST_CASE("shadow experiment rejects radii inside 1/Delta") {
    const auto cw = make_body(BodySpec::constant_width_spec(0.1));
    CHECK_THROWS_AS(shadow_experiment(cw, {2, 4}, 8, 7), ValidationError);
}

TEST_CASE("eps-decay on the circle matches closed-form tangency geometry") {
    // at x = (r, 0): n_- = (0, 1) and m_- has normal angle arccos(1/r), so
    // q1 = 2 sin(asin(1/r) / 2); by rotational symmetry this is q1 at any x
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    const auto rep = eps_decay_experiment(circle, {10, 20, 40, 80}, 16, 3);
    const Table* t = rep.find_table("per_radius");
    REQUIRE(t != nullptr);
    for (const auto& row : t->rows) {
        const double r = row[0];
        const double q1_expected = 2.0 * std::sin(0.5 * std::asin(1.0 / r));
        CHECK(row[1] == doctest::Approx(q1_expected).epsilon(1e-9));
        CHECK(row[2] == doctest::Approx(q1_expected).epsilon(1e-9));  // q2: same geometry at y
    }
    CHECK(rep.all_pass());
}

TEST_CASE("eps-decay experiment passes on both acceptance bodies") {
    for (auto spec :
         {BodySpec::constant_width_spec(0.1), BodySpec::ellipsoid_spec({1.0, 0.8, 1.2, 0.9})}) {
        const auto rep = eps_decay_experiment(make_body(spec), {10, 20, 40, 80, 160}, 16, 7);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("escape on the circle: increments vanish") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    Vec x0 = v2(30.0, 7.0);
    const auto rep = escape_experiment(circle, x0, 500);
    CHECK(rep.all_pass());
    double inc_max = 0.0;
    for (const auto& [k, v] : rep.summary)
        if (k == "C_bar") CHECK(v > 0);
    const Table* t = rep.find_table("track");
    REQUIRE(t != nullptr);
    for (const auto& row : t->rows) inc_max = std::max(inc_max, row[2]);
    CHECK(inc_max < 1e-8);  // radius is invariant on the circle
}

TEST_CASE("escape precondition: start too close is rejected") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    CHECK_THROWS_AS(escape_experiment(circle, v2(1.5, 0), 10), ValidationError);
}

TEST_CASE("square bound check: trivial, shadow pairs in the H-norm, hypothesis gate") {
    // a = b gives zero left-hand side
    std::vector<std::pair<Vec, Vec>> trivial = {{v2(3, 4), v2(3, 4)}};
    auto rep = square_bound_check(trivial, 1.0, 0.5);
    CHECK(rep.pass);
    CHECK(rep.checked == 1);
    CHECK(rep.max_lhs == 0.0);

    // pairs (T^2 x, phi_1 x) at r = 20, measured in the H-norm with the
    // escape-bound constants C2 = mu^2 (6C + C~), Lambda = Delta / mu
    const auto cw = make_body(BodySpec::constant_width_spec(0.1));
    const auto constants = constants_estimate(cw, 150);
    const OuterBilliardMap map(cw);
    const HamiltonianAtInfinity h(cw);
    std::vector<std::pair<Vec, Vec>> pairs;
    for (const Vec& u : sphere_sample(2, 32, 5)) {
        const Vec x = 20.0 * u;
        pairs.emplace_back(map.square(x), flow(h, x, 1.0));
    }
    const double c2 = constants.mu * constants.mu * constants.six_c_plus_c_tilde();
    const double lambda = 1.0 / (constants.mu * constants.Delta_inv);
    auto hrep = square_bound_check(pairs, c2, lambda, [&](const Vec& v) { return h.value(v); });
    CHECK(hrep.skipped == 0);
    CHECK(hrep.pass);

    // synthetic pair violating the hypothesis |a - b| <= C/|b| is skipped
    std::vector<std::pair<Vec, Vec>> bad = {{v2(100, 0), v2(3, 4)}};
    auto brep = square_bound_check(bad, 1.0, 1.0);
    CHECK(brep.checked == 0);
    CHECK(brep.skipped == 1);
    REQUIRE(brep.skipped_indices.size() == 1);
    CHECK(brep.skipped_indices[0] == 0);
}

TEST_CASE("demo: circle limit is exactly invariant, eps = 0.1 passes the verdicts") {
    const auto circle_demo = demo_constant_width(0.0, 50.0, 200);
    CHECK(circle_demo.all_pass());
    double rmin = 0, rmax = 0;
    for (const auto& [k, v] : circle_demo.summary) {
        if (k == "radius_min") rmin = v;
        if (k == "radius_max") rmax = v;
    }
    CHECK((rmax - rmin) / 50.0 < 1e-8);

    const auto rep = demo_constant_width(0.1, 100.0, 400);
    CHECK(rep.all_pass());
    // |V| = 4 on the radius-2 symmetrization: angular speed ~ 4/radius
    for (const auto& [k, v] : rep.summary)
        if (k == "angular_increment_mean")
            CHECK(v == doctest::Approx(4.0 / 100.0).epsilon(5e-3));
}

TEST_CASE("periodic bound experiment: orbits inside rho, k = 2 empty") {
    const auto ellipse = make_body(BodySpec::ellipsoid_spec({1, 0.6}));
    const auto rep3 = periodic_bound_experiment(ellipse, 3, 40, 11);
    CHECK(rep3.all_pass());
    double found = 0, rho = 0;
    for (const auto& [k, v] : rep3.summary) {
        if (k == "found") found = v;
        if (k == "rho_k") rho = v;
    }
    CHECK(found >= 1);
    CHECK(rho > 0);
    const Table* t = rep3.find_table("orbits");
    REQUIRE(t != nullptr);
    for (const auto& row : t->rows) CHECK(row[1] <= rho);

    const auto rep2 = periodic_bound_experiment(ellipse, 2, 20, 11);
    CHECK(rep2.all_pass());  // vacuous radius verdict
    for (const auto& [k, v] : rep2.summary)
        if (k == "found") CHECK(v == 0);
}

TEST_CASE("experiment reports are deterministic for a fixed seed") {
    const auto cw = make_body(BodySpec::constant_width_spec(0.1));
    const auto a = shadow_experiment(cw, {10, 20}, 8, 42);
    const auto b = shadow_experiment(cw, {10, 20}, 8, 42);
    REQUIRE(a.tables.size() == b.tables.size());
    const Table* ta = a.find_table("samples");
    const Table* tb = b.find_table("samples");
    REQUIRE(ta->rows.size() == tb->rows.size());
    for (std::size_t i = 0; i < ta->rows.size(); ++i)
        for (std::size_t j = 0; j < ta->rows[i].size(); ++j)
            CHECK(ta->rows[i][j] == tb->rows[i][j]);
}

TEST_CASE("duality suite passes on the full catalog") {
    for (auto spec :
         {BodySpec::ellipsoid_spec({1, 1}), BodySpec::ellipsoid_spec({1, 0.6}),
          BodySpec::pball_spec(1.5, 2), BodySpec::constant_width_spec(0.1),
          BodySpec::harmonic_spec(0.03, 5), BodySpec::ellipsoid_spec({1.0, 0.8, 1.2, 0.9})}) {
        const auto rep = duality_suite(make_body(spec), 100, 3);
        CHECK(rep.all_pass());
    }
}
