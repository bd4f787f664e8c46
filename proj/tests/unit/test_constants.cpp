#include <doctest.h>

#include <cmath>

#include <osb/experiments.hpp>

using namespace osb;

TEST_CASE("circle constants: C1 = 2, m = 4, mu = 2") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    const auto c = constants_estimate(circle, 200, {2, 3});
    CHECK(c.C1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c.m == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c.mu == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c.ell == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(c.eta > 0.0);
    CHECK(c.eta <= 0.5);
    CHECK(c.rho_table.size() == 2);
}

TEST_CASE("constant width: C1 = 2 and m = 4 independent of eps") {
    for (double eps : {0.05, 0.1}) {
        const auto cw = make_body(BodySpec::constant_width_spec(eps));
        const auto c = constants_estimate(cw, 150);
        CHECK(c.C1 == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(c.m == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("stored C_bar and rho(k) are exact arithmetic identities") {
    const auto ellipse = make_body(BodySpec::ellipsoid_spec({1, 0.6}));
    const auto c = constants_estimate(ellipse, 150, {2, 3, 5});
    CHECK(c.C_bar == c.c_bar_formula());
    CHECK(c.C == 6.0 * c.C1 / c.ell);
    for (const auto& [k, rho] : c.rho_table) {
        const double kk = k - 1.0;
        const double expected =
            std::max({c.delta_inv + 2 * kk * c.C1, 2 * kk * c.C1 / c.eta, 24 * c.C / c.m});
        CHECK(rho == expected);
    }
    CHECK(c.Delta_inv == std::max(c.delta_inv, c.delta_tilde_inv));
}

TEST_CASE("all entries positive, eta capped, rho nondecreasing in k") {
    for (auto spec : {BodySpec::ellipsoid_spec({1, 0.6}), BodySpec::constant_width_spec(0.1),
                      BodySpec::ellipsoid_spec({1.0, 0.8, 1.2, 0.9})}) {
        const auto c = constants_estimate(make_body(spec), 150);
        CHECK(c.C1 > 0);
        CHECK(c.ell > 0);
        CHECK(c.C > 0);
        CHECK(c.delta_inv > 0);
        CHECK(c.C_tilde > 0);
        CHECK(c.m > 0);
        CHECK(c.eta > 0);
        CHECK(c.eta <= 0.5);
        CHECK(c.mu >= 1.0);
        CHECK(c.Delta_inv >= c.delta_inv);
        CHECK(c.C_bar > 0);
        for (int k = 2; k < 12; ++k) CHECK(c.rho(k + 1) >= c.rho(k));
    }
}

TEST_CASE("rho scales linearly with the body") {
    const auto c1 = constants_estimate(make_body(BodySpec::ellipsoid_spec({1, 0.6})), 150);
    const auto c2 = constants_estimate(make_body(BodySpec::ellipsoid_spec({2, 1.2})), 150);
    for (int k : {2, 3, 5, 9})
        CHECK(c2.rho(k) / c1.rho(k) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("estimator preconditions") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    CHECK_THROWS_AS(constants_estimate(circle, 50), ValidationError);
}
