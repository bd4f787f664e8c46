#include <doctest.h>

#include <cmath>
#include <numbers>

#include <osb/convex_body.hpp>

using namespace osb;

namespace {

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

// Brute-force support oracle: max <v, x> over a dense boundary grid of the
// p-ball, parametrized by x = sgn(c)|c|^{2/p}, y = sgn(s)|s|^{2/p}.
double pball_support_bruteforce(double p, const Vec& v, int grid) {
    double best = -1e300;
    for (int i = 0; i < grid; ++i) {
        const double th = 2.0 * std::numbers::pi * i / grid;
        const double c = std::cos(th), s = std::sin(th);
        const double x = std::copysign(std::pow(std::abs(c), 2.0 / p), c);
        const double y = std::copysign(std::pow(std::abs(s), 2.0 / p), s);
        best = std::max(best, v[0] * x + v[1] * y);
    }
    return best;
}

// Brute-force argmax of <v, x> over an ellipse boundary grid.
Vec ellipse_argmax_bruteforce(double a, double b, const Vec& v, int grid) {
    double best = -1e300;
    Vec arg(2);
    for (int i = 0; i < grid; ++i) {
        const double th = 2.0 * std::numbers::pi * i / grid;
        const Vec q = v2(a * std::cos(th), b * std::sin(th));
        const double val = v.dot(q);
        if (val > best) {
            best = val;
            arg = q;
        }
    }
    return arg;
}

}  // namespace

TEST_CASE("support: unit circle, ellipse axes, pball dual norm") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    for (const Vec& v : sphere_sample(2, 32, 1))
        CHECK(circle.support(v) == doctest::Approx(1.0).epsilon(1e-14));

    const auto ellipse = make_body(BodySpec::ellipsoid_spec({2, 1}));
    CHECK(ellipse.support(v2(1, 0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ellipse.support(v2(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));

    // pball(1.5): support is the 3-norm (dual exponent), cross-checked by
    // brute force over the boundary
    const auto pb = make_body(BodySpec::pball_spec(1.5, 2));
    const PNorm three(3.0, 2);
    for (const Vec& v : sphere_sample(2, 16, 2)) {
        const double s = pb.support(v);
        CHECK(s == doctest::Approx(three.value(v)).epsilon(1e-12));
        CHECK(s == doctest::Approx(pball_support_bruteforce(1.5, v, 200000)).epsilon(1e-7));
    }
}

TEST_CASE("support_point: circle identity, ellipse closed form vs brute force") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    for (const Vec& v : sphere_sample(2, 16, 3)) CHECK((circle.support_point(v) - v).norm() < 1e-14);

    const auto ellipse = make_body(BodySpec::ellipsoid_spec({1, 0.6}));
    CHECK((ellipse.support_point(v2(0, 1)) - v2(0, 0.6)).norm() < 1e-14);
    for (const Vec& v : sphere_sample(2, 8, 4)) {
        const double a = 1.0, b = 0.6;
        const double denom = std::sqrt(a * a * v[0] * v[0] + b * b * v[1] * v[1]);
        const Vec closed = v2(a * a * v[0] / denom, b * b * v[1] / denom);
        CHECK((ellipse.support_point(v) - closed).norm() < 1e-12);
        CHECK((ellipse.support_point(v) - ellipse_argmax_bruteforce(a, b, v, 400000)).norm() <
              2e-5);
    }
}

TEST_CASE("gauge: closed forms, homogeneity, radial root-find") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    CHECK(circle.gauge(v2(3, 4)) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(circle.gauge(Vec::Zero(2)) == 0.0);

    const auto ellipse = make_body(BodySpec::ellipsoid_spec({1, 0.6}));
    GaussianRng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Vec x = 3.0 * unit_vector(rng, 2);
        const double f = ellipse.gauge(x);
        CHECK(f == doctest::Approx(std::sqrt(x[0] * x[0] + x[1] * x[1] / 0.36)).epsilon(1e-12));
        for (double c : {0.1, 1.0, 10.0})
            CHECK(ellipse.gauge(c * x) == doctest::Approx(c * f).epsilon(1e-10));
    }

    // support-only body: gauge goes through the radial Newton solve
    const ConvexBody ellipse_support_only(
        std::make_shared<QuadraticFormRoot>(std::vector<double>{1.0, 0.36}), nullptr,
        "ellipse support-only");
    for (int i = 0; i < 50; ++i) {
        const Vec x = 2.5 * unit_vector(rng, 2);
        CHECK(ellipse_support_only.gauge(x) ==
              doctest::Approx(ellipse.gauge(x)).epsilon(1e-10));
        CHECK((ellipse_support_only.gauge_gradient(x) - ellipse.gauge_gradient(x)).norm() < 1e-9);
    }
}

TEST_CASE("gauge_gradient: Euler identity, 0-homogeneity, finite differences") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    const Vec x0 = v2(3, 4);
    CHECK((circle.gauge_gradient(x0) - v2(0.6, 0.8)).norm() < 1e-14);

    GaussianRng rng(13);
    for (auto spec : {BodySpec::ellipsoid_spec({1, 0.6}), BodySpec::pball_spec(1.5, 2),
                      BodySpec::constant_width_spec(0.1)}) {
        const auto body = make_body(spec);
        for (int i = 0; i < 30; ++i) {
            const Vec x = rng.uniform(1.5, 4.0) * unit_vector(rng, 2);
            const Vec g = body.gauge_gradient(x);
            CHECK(std::abs(g.dot(x) - body.gauge(x)) < 1e-10 * body.gauge(x));
            CHECK((body.gauge_gradient(2.0 * x) - g).norm() < 1e-10);
            // central finite differences of the gauge
            const double h = 1e-6;
            for (int j = 0; j < 2; ++j) {
                Vec xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                const double fd = (body.gauge(xp) - body.gauge(xm)) / (2 * h);
                CHECK(g[j] == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("gauss map: identity on circle, round trips, domain error") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    for (const Vec& v : sphere_sample(2, 16, 5)) CHECK((circle.gauss_map(v) - v).norm() < 1e-14);

    const auto ellipse = make_body(BodySpec::ellipsoid_spec({1, 0.6}));
    CHECK((ellipse.gauss_map(v2(1, 0)) - v2(1, 0)).norm() < 1e-14);
    CHECK_THROWS_AS(ellipse.gauss_map(v2(2, 2)), DomainError);

    for (auto spec : {BodySpec::ellipsoid_spec({1, 0.6}), BodySpec::constant_width_spec(0.1),
                      BodySpec::ellipsoid_spec({1.0, 0.8, 1.2, 0.9})}) {
        const auto body = make_body(spec);
        for (const Vec& v : sphere_sample(body.dim(), 200, 6)) {
            const Vec q = body.support_point(v);
            CHECK((body.gauss_map(q) - v).norm() < 1e-8);        // G o G^{-1} = id
            CHECK(body.gauge(q) == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(std::abs(v.dot(q) - body.support(v)) < 1e-10);  // support identity
        }
    }
}

TEST_CASE("support from a gauge-only body matches the closed form") {
    const ConvexBody gauge_only = ConvexBody::from_gauge(
        std::make_shared<QuadraticFormRoot>(std::vector<double>{1.0, 1.0 / 0.36}),
        "ellipse gauge-only");
    const auto ellipse = make_body(BodySpec::ellipsoid_spec({1, 0.6}));
    for (const Vec& v : sphere_sample(2, 24, 7)) {
        CHECK(gauge_only.support(v) == doctest::Approx(ellipse.support(v)).epsilon(1e-10));
        CHECK((gauge_only.support_point(v) - ellipse.support_point(v)).norm() < 1e-9);
    }
}

TEST_CASE("diameter: circle, ellipse major axis, constant width") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    CHECK(circle.diameter(64) == doctest::Approx(2.0).epsilon(1e-14));

    const auto ellipse = make_body(BodySpec::ellipsoid_spec({2, 1}));
    CHECK(ellipse.diameter(64) == doctest::Approx(4.0).epsilon(1e-14));

    for (double eps : {0.05, 0.1}) {
        const auto cw = make_body(BodySpec::constant_width_spec(eps));
        CHECK(cw.diameter(128) == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(circle.diameter(1), ValidationError);
}

TEST_CASE("validate_convexity: circle eigenvalue 1, constant width margin, pball axis degeneracy") {
    const auto circle = make_body(BodySpec::ellipsoid_spec({1, 1}));
    const auto rc = circle.validate_convexity(64);
    CHECK(rc.pass);
    CHECK(rc.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));

    // support path: tangential Hessian is p + p'' = 1 - 8 eps cos(3 theta)
    const auto cw = make_body(BodySpec::constant_width_spec(0.1));
    const auto rw = cw.validate_convexity(512);
    CHECK(rw.pass);
    CHECK(rw.min_eigenvalue > 0.19);
    CHECK(rw.min_eigenvalue < 0.21);

    const auto pb = make_body(BodySpec::pball_spec(1.5, 2));
    const auto rp = pb.validate_convexity(64);
    CHECK_FALSE(rp.pass);  // curvature degenerates at the axis directions
    CHECK(std::abs(rp.min_eigenvalue) < 1e-12);
}

TEST_CASE("body spec validation") {
    CHECK_THROWS_AS(make_body(BodySpec::constant_width_spec(0.2)), ValidationError);
    CHECK_THROWS_AS(make_body(BodySpec::pball_spec(2.5, 2)), ValidationError);
    CHECK_THROWS_AS(make_body(BodySpec::pball_spec(1.5, 3)), ValidationError);
    CHECK_THROWS_AS(make_body(BodySpec::harmonic_spec(0.3, 5)), ValidationError);
    CHECK_THROWS_AS(make_body(BodySpec::ellipsoid_spec({1.0, -1.0})), ValidationError);
    CHECK_THROWS_AS(make_body(BodySpec::ellipsoid_spec({1.0, 1.0, 1.0})), ValidationError);
    CHECK_NOTHROW(make_body(BodySpec::harmonic_spec(0.04, 5)));
}

TEST_CASE("scaled bodies") {
    const auto ellipse = make_body(BodySpec::ellipsoid_spec({1, 0.6}));
    const auto doubled = ellipse.scaled(2.0);
    for (const Vec& v : sphere_sample(2, 16, 8)) {
        CHECK(doubled.support(v) == doctest::Approx(2.0 * ellipse.support(v)).epsilon(1e-14));
        CHECK(doubled.gauge(3.0 * v) ==
              doctest::Approx(0.5 * ellipse.gauge(3.0 * v)).epsilon(1e-14));
    }
}
