#include <doctest.h>

#include <osb/symplectic.hpp>

using namespace osb;

namespace {
Vec make_vec(std::initializer_list<double> vals) {
    Vec v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}
}  // namespace

TEST_CASE("omega basis normalization and antisymmetry on fixed vectors") {
    CHECK(omega(make_vec({1, 0}), make_vec({0, 1})) == doctest::Approx(1.0).epsilon(1e-15));
    const Vec u = make_vec({0.3, -1.7});
    CHECK(omega(u, u) == 0.0);

    // J(1,2,3,4) = (-2,1,-4,3); <(-2,1,-4,3),(5,6,7,8)> = -10+6-28+24 = -8
    const Vec a = make_vec({1, 2, 3, 4});
    const Vec b = make_vec({5, 6, 7, 8});
    CHECK(omega(a, b) == doctest::Approx(-8.0).epsilon(1e-15));
    CHECK(omega(b, a) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK((apply_J(a) - make_vec({-2, 1, -4, 3})).norm() == 0.0);
}

TEST_CASE("J convention in the plane and J^2 = -id") {
    CHECK((apply_J(make_vec({1, 0})) - make_vec({0, 1})).norm() == 0.0);
    CHECK((apply_J(make_vec({0, 1})) - make_vec({-1, 0})).norm() == 0.0);
    const Vec v = make_vec({0.2, -0.9, 1.4, 0.7});
    CHECK((apply_J(apply_J(v)) + v).norm() == 0.0);
    CHECK((apply_J_inverse(apply_J(v)) - v).norm() == 0.0);
}

TEST_CASE("dimension errors") {
    CHECK_THROWS_AS(omega(make_vec({1, 0}), make_vec({1, 0, 0, 0})), DimensionError);
    CHECK_THROWS_AS(apply_J(Vec::Ones(3)), DimensionError);
    CHECK_THROWS_AS(apply_J(Vec::Ones(0)), DimensionError);
}

TEST_CASE("antisymmetry, J-compatibility and isometry on random samples") {
    GaussianRng rng(123);
    for (int dim : {2, 4, 6}) {
        for (int i = 0; i < 1000; ++i) {
            Vec u(dim), v(dim);
            for (int j = 0; j < dim; ++j) {
                u[j] = 3.0 * rng.gaussian();
                v[j] = 3.0 * rng.gaussian();
            }
            CHECK(std::abs(omega(u, v) + omega(v, u)) < 1e-12 * u.norm() * v.norm());
            CHECK(std::abs(omega(u, apply_J(u)) - u.dot(u)) < 1e-12 * u.squaredNorm());
            CHECK(std::abs(apply_J(u).norm() - u.norm()) < 1e-14 * u.norm());
        }
    }
}

TEST_CASE("omega matrix matches the bilinear form") {
    const Mat om = omega_matrix(4);
    GaussianRng rng(5);
    for (int i = 0; i < 50; ++i) {
        Vec u(4), v(4);
        for (int j = 0; j < 4; ++j) {
            u[j] = rng.gaussian();
            v[j] = rng.gaussian();
        }
        CHECK(u.dot(om * v) == doctest::Approx(omega(u, v)).epsilon(1e-14));
    }
}

TEST_CASE("sphere sampling: unit norm, determinism, seed sensitivity") {
    const auto a = sphere_sample(2, 4, 0);
    REQUIRE(a.size() == 4);
    for (const Vec& v : a) CHECK(std::abs(v.norm() - 1.0) <= 1e-14);

    const auto b = sphere_sample(2, 4, 0);
    for (int i = 0; i < 4; ++i) CHECK((a[i] - b[i]).norm() == 0.0);

    const auto c = sphere_sample(2, 4, 1);
    CHECK((a[0] - c[0]).norm() > 0.0);

    const auto d = sphere_sample(4, 100, 7);
    for (const Vec& v : d) CHECK(std::abs(v.norm() - 1.0) <= 1e-14);
}

TEST_CASE("tangent basis is orthonormal and orthogonal to v") {
    GaussianRng rng(17);
    for (int dim : {2, 4}) {
        for (int i = 0; i < 20; ++i) {
            const Vec v = unit_vector(rng, dim);
            const Mat t = tangent_basis(v);
            REQUIRE(t.cols() == dim - 1);
            CHECK((t.transpose() * t - Mat::Identity(dim - 1, dim - 1)).norm() < 1e-13);
            CHECK((t.transpose() * v).norm() < 1e-13);
        }
    }
}
