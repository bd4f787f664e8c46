#include "osb/duality.hpp"

#include <algorithm>
#include <cmath>

#include "osb/errors.hpp"

namespace osb {

Vec reeb(const ConvexBody& body, const Vec& q) {
    const Vec v = body.gauss_map(q);  // throws DomainError off the body
    return apply_J(v) / body.support(v);
}

Vec symplectic_polar_point(const ConvexBody& body, const Vec& v) {
    const Vec u = v.normalized();
    return apply_J(u) / body.support(u);
}

InvolutionReport check_involution(const ConvexBody& body, int samples, std::uint64_t seed) {
    if (samples < 1) throw ValidationError("check_involution needs samples >= 1");
    InvolutionReport report;
    report.samples = samples;
    const int n = body.dim();
    const double fd_step = 1e-6;

    for (const Vec& v : sphere_sample(n, samples, seed)) {
        const Vec x = body.support_point(v);
        const Vec a = symplectic_polar_point(body, v);

        // a = R(x); tangents of M* at a by central differences along the
        // normal sphere, using the parametrization v -> R(support_point(v)).
        const Mat basis = tangent_basis(v);
        for (Eigen::Index j = 0; j < basis.cols(); ++j) {
            const Vec vp = (v + fd_step * basis.col(j)).normalized();
            const Vec vm = (v - fd_step * basis.col(j)).normalized();
            const Vec u = (symplectic_polar_point(body, vp) - symplectic_polar_point(body, vm)) /
                          (2.0 * fd_step);
            if (u.norm() == 0.0) continue;
            const double viol = std::abs(omega(u, -x)) / (u.norm() * x.norm());
            report.max_tangency_violation = std::max(report.max_tangency_violation, viol);
        }
        report.max_normalization_violation =
            std::max(report.max_normalization_violation, std::abs(omega(a, -x) - 1.0));
    }
    return report;
}

SymmetrizedBody symmetrize(const ConvexBody& base) {
    auto support = std::make_shared<SymmetrizedFunction>(base.support_fn_ptr());
    // Centrally symmetric catalog bodies symmetrize onto their doubled copy,
    // so their closed-form gauge carries over as f(x)/2.
    HomogeneousFnPtr gauge;
    if (base.spec().has_value() && base.has_gauge_form()) {
        const auto kind = base.spec()->kind;
        if (kind == BodySpec::Kind::ellipsoid || kind == BodySpec::Kind::pball)
            gauge = std::make_shared<ScaledFunction>(base.gauge_fn_ptr(), 0.5);
    }
    return SymmetrizedBody{
        base, ConvexBody(std::move(support), std::move(gauge), base.description() + " symmetrized")};
}

Vec n_plus(const ConvexBody& body, const Vec& x) {
    if (!(body.gauge(x) > 1.0)) throw DomainError("n_plus: point not strictly outside the body");
    const Vec u = apply_J(x).normalized();
    return body.support_point(-u);
}

Vec n_minus(const ConvexBody& body, const Vec& x) {
    if (!(body.gauge(x) > 1.0)) throw DomainError("n_minus: point not strictly outside the body");
    const Vec u = apply_J(x).normalized();
    return body.support_point(u);
}

Vec shadow_field(const HamiltonianAtInfinity& h, const Vec& x) {
    // points on the boundary of the symmetrization are admissible; only the
    // interior (beyond roundoff) is rejected
    if (h.symmetrized_gauge(x) < 1.0 - 1e-9)
        throw DomainError("shadow_field: point inside the symmetrization");
    const ConvexBody& base = h.base();
    return 2.0 * (n_plus(base, x) - n_minus(base, x));
}

}  // namespace osb
