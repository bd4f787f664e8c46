#include "osb/solvers.hpp"

#include <Eigen/Dense>

#include "osb/errors.hpp"

namespace osb {

namespace {

// Bordered Newton step with backtracking. Solves J dz = -F where the last
// row of J is the sphere-constraint row; quadratic convexity makes the
// bordered matrix nonsingular even though the homogeneous Hessian is rank
// deficient along v.
Vec solve_bordered(const Mat& jac, const Vec& rhs) {
    return jac.colPivHouseholderQr().solve(rhs);
}

}  // namespace

RadialSolution radial_point(const HomogeneousConvexFunction& support, const Vec& direction,
                            const NewtonOptions& opts) {
    const int n = support.dim();
    if (direction.size() != n)
        throw DimensionError("radial_point: direction dimension mismatch");
    const double dn = direction.norm();
    if (dn <= 0.0) throw DomainError("radial_point: zero direction");
    const Vec u = direction / dn;

    Vec v = u;
    double r = support.gradient(v).norm();

    auto residual_of = [&](const Vec& vv, double rr) {
        return (support.gradient(vv) - rr * u).norm();
    };

    double res = residual_of(v, r);
    for (int it = 0; it < opts.max_iter; ++it) {
        if (res <= opts.tol)
            return {v, r, res, it};

        Mat jac = Mat::Zero(n + 1, n + 1);
        jac.topLeftCorner(n, n) = support.hessian(v);
        jac.topRightCorner(n, 1) = -u;
        jac.bottomLeftCorner(1, n) = v.transpose();

        Vec rhs(n + 1);
        rhs.head(n) = -(support.gradient(v) - r * u);
        rhs[n] = -0.5 * (v.squaredNorm() - 1.0);

        const Vec dz = solve_bordered(jac, rhs);
        double step = 1.0;
        for (int bt = 0; bt < 8; ++bt) {
            Vec v_try = (v + step * dz.head(n)).normalized();
            double r_try = r + step * dz[n];
            double res_try = residual_of(v_try, r_try);
            if (res_try < res || res_try <= opts.tol) {
                v = v_try;
                r = r_try;
                res = res_try;
                break;
            }
            step *= 0.5;
            if (bt == 7) {  // no decrease at the smallest step; take it anyway
                v = v_try;
                r = r_try;
                res = res_try;
            }
        }
    }
    if (res <= opts.tol) return {v, r, res, opts.max_iter};
    throw SolverError("radial_point did not converge", res);
}

SupportSolution support_via_gauge(const HomogeneousConvexFunction& gauge, const Vec& direction,
                                  const NewtonOptions& opts) {
    const int n = gauge.dim();
    if (direction.size() != n)
        throw DimensionError("support_via_gauge: direction dimension mismatch");
    const double dn = direction.norm();
    if (dn <= 0.0) throw DomainError("support_via_gauge: zero direction");
    const Vec v = direction / dn;

    Vec x = v / gauge.value(v);
    double lambda = gauge.gradient(x).dot(v);

    auto residual_of = [&](const Vec& xx, double ll) {
        const Vec g = gauge.gradient(xx) - ll * v;
        const double c = gauge.value(xx) - 1.0;
        return std::sqrt(g.squaredNorm() + c * c);
    };

    double res = residual_of(x, lambda);
    for (int it = 0; it < opts.max_iter; ++it) {
        if (res <= opts.tol)
            return {x, v.dot(x), res, it};

        Mat jac = Mat::Zero(n + 1, n + 1);
        jac.topLeftCorner(n, n) = gauge.hessian(x);
        jac.topRightCorner(n, 1) = -v;
        jac.bottomLeftCorner(1, n) = gauge.gradient(x).transpose();

        Vec rhs(n + 1);
        rhs.head(n) = -(gauge.gradient(x) - lambda * v);
        rhs[n] = -(gauge.value(x) - 1.0);

        const Vec dz = solve_bordered(jac, rhs);
        double step = 1.0;
        for (int bt = 0; bt < 8; ++bt) {
            Vec x_try = x + step * dz.head(n);
            double l_try = lambda + step * dz[n];
            double res_try = residual_of(x_try, l_try);
            if (res_try < res || res_try <= opts.tol) {
                x = x_try;
                lambda = l_try;
                res = res_try;
                break;
            }
            step *= 0.5;
            if (bt == 7) {
                x = x_try;
                lambda = l_try;
                res = res_try;
            }
        }
    }
    if (res <= opts.tol) return {x, v.dot(x), res, opts.max_iter};
    throw SolverError("support_via_gauge did not converge", res);
}

}  // namespace osb
