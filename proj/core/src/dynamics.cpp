#include "osb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "osb/errors.hpp"

namespace osb {

OuterBilliardMap::OuterBilliardMap(ConvexBody body, SolverSettings settings)
    : body_(std::move(body)), settings_(settings), hamiltonian_(body_) {
    settings_.validate();
}

namespace {

// Residual of the tangency system F(v, s) = x(v) - x - s Jv / p(v) for the
// minus branch; the plus branch flips the ray: x - x(v) = s Jv / p(v).
struct TangencySystem {
    const HomogeneousConvexFunction& h;
    const Vec& x;
    double sign;  // +1: minus branch, -1: plus branch

    Vec residual(const Vec& v, double s) const {
        const double p = h.value(v);
        return h.gradient(v) - x - sign * s / p * apply_J(v);
    }

    // d/dv [Jv / p] = J/p - (Jv) grad p^T / p^2
    Mat jacobian_v(const Vec& v, double s) const {
        const int n = static_cast<int>(v.size());
        const double p = h.value(v);
        const Vec jv = apply_J(v);
        const Vec gp = h.gradient(v);
        Mat jmat = Mat::Zero(n, n);
        for (int i = 0; i + 1 < n; i += 2) {
            jmat(i, i + 1) = -1.0;
            jmat(i + 1, i) = 1.0;
        }
        return h.hessian(v) - sign * s * (jmat / p - jv * gp.transpose() / (p * p));
    }

    Vec ds_column(const Vec& v) const { return -sign / h.value(v) * apply_J(v); }

    // Least-squares optimal s for a candidate normal; used by the fallback.
    double best_s(const Vec& v) const {
        const double p = h.value(v);
        const Vec r = sign * p * (h.gradient(v) - x);  // s Jv = sign p (x(v) - x)
        const Vec jv = apply_J(v);
        return r.dot(jv) / jv.squaredNorm();
    }
};

}  // namespace

ReflectionSolution OuterBilliardMap::solve_tangency(const Vec& x, bool minus_branch,
                                                    const Vec* hint_normal) const {
    const int n = body_.dim();
    if (x.size() != n) throw DimensionError("reflect: dimension mismatch");
    const double g = body_.gauge(x);
    if (!(g >= 1.0 + kExteriorMargin))
        throw DomainError("reflect: point must be strictly outside the body (gauge " +
                          std::to_string(g) + ")");

    const TangencySystem sys{body_.support_fn(), x, minus_branch ? 1.0 : -1.0};

    auto init_s = [&](const Vec& vv) {
        const double p = sys.h.value(vv);
        return (sys.h.gradient(vv) - x).norm() * p;
    };

    auto newton = [&](Vec v0, double s0) -> std::optional<ReflectionSolution> {
        Vec vv = v0;
        double ss = s0;
        double res = sys.residual(vv, ss).norm();
        for (int it = 0; it < settings_.max_iter; ++it) {
            if (res <= settings_.residual_tol) {
                if (ss <= 0.0) return std::nullopt;  // wrong branch
                return ReflectionSolution{sys.h.gradient(vv), ss, vv, res, it};
            }
            Mat jac = Mat::Zero(n + 1, n + 1);
            jac.topLeftCorner(n, n) = sys.jacobian_v(vv, ss);
            jac.topRightCorner(n, 1) = sys.ds_column(vv);
            jac.bottomLeftCorner(1, n) = vv.transpose();
            Vec rhs(n + 1);
            rhs.head(n) = -sys.residual(vv, ss);
            rhs[n] = -0.5 * (vv.squaredNorm() - 1.0);
            const Vec dz = jac.colPivHouseholderQr().solve(rhs);
            if (!dz.allFinite()) return std::nullopt;
            double step = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 10; ++bt) {
                Vec v_try = (vv + step * dz.head(n)).normalized();
                double s_try = ss + step * dz[n];
                double res_try = sys.residual(v_try, s_try).norm();
                if (res_try < res || res_try <= settings_.residual_tol) {
                    vv = v_try;
                    ss = s_try;
                    res = res_try;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) return std::nullopt;  // stagnated
        }
        if (res <= settings_.residual_tol && ss > 0.0)
            return ReflectionSolution{sys.h.gradient(vv), ss, vv, res, settings_.max_iter};
        return std::nullopt;
    };

    if (hint_normal && settings_.warm_start) {
        const Vec v_hint = hint_normal->normalized();
        if (auto sol = newton(v_hint, init_s(v_hint))) return *sol;
    }
    // Cold start: far away m_-+ approaches n_-+, whose normal is +-Jx/|x|.
    const Vec v_cold = sys.sign * apply_J(x).normalized();
    if (auto sol = newton(v_cold, init_s(v_cold))) return *sol;
    return fallback_search(x, minus_branch);
}

ReflectionSolution OuterBilliardMap::fallback_search(const Vec& x, bool minus_branch) const {
    const int n = body_.dim();
    const TangencySystem sys{body_.support_fn(), x, minus_branch ? 1.0 : -1.0};

    // Tangency normals satisfy g(v) = p(v) - <x, v> = 0. Candidates: in the
    // plane, bracket the sign changes of g on a grid of normal angles and
    // bisect; in higher dimension, scan deterministic sphere samples and
    // polish the best-residual candidates.
    std::vector<Vec> candidates;
    if (n == 2) {
        const int grid = settings_.fallback_grid;
        auto vone = [&](double th) {
            Vec v(2);
            v << std::cos(th), std::sin(th);
            return v;
        };
        auto gfun = [&](double th) {
            const Vec v = vone(th);
            return sys.h.value(v) - x.dot(v);
        };
        double prev = gfun(0.0);
        for (int i = 1; i <= grid; ++i) {
            const double th = 2.0 * std::numbers::pi * i / grid;
            const double cur = gfun(th);
            if (prev == 0.0 || prev * cur < 0.0) {
                double lo = 2.0 * std::numbers::pi * (i - 1) / grid, hi = th;
                double glo = prev;
                for (int bis = 0; bis < 60; ++bis) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = gfun(mid);
                    if (glo * gm <= 0.0) {
                        hi = mid;
                    } else {
                        lo = mid;
                        glo = gm;
                    }
                }
                candidates.push_back(vone(0.5 * (lo + hi)));
            }
            prev = cur;
        }
    } else {
        auto samples = sphere_sample(n, settings_.fallback_grid, /*seed=*/23);
        samples.push_back(sys.sign * apply_J(x).normalized());
        std::vector<std::pair<double, Vec>> scored;
        for (const Vec& v : samples) {
            const double s = sys.best_s(v);
            if (s <= 0.0) continue;
            scored.emplace_back(sys.residual(v, s).norm(), v);
        }
        std::sort(scored.begin(), scored.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < scored.size() && i < 8; ++i)
            candidates.push_back(scored[i].second);
    }

    double best_res = std::numeric_limits<double>::infinity();
    bool wrong_branch_only = false;
    for (const Vec& v0 : candidates) {
        const double s0 = sys.best_s(v0);
        if (n == 2 && s0 <= 0.0) continue;  // other branch's tangent line
        Vec vv = v0;
        double ss = std::max(s0, 1e-12);
        double res = sys.residual(vv, ss).norm();
        for (int it = 0; it < settings_.max_iter && res > settings_.residual_tol; ++it) {
            Mat jac = Mat::Zero(n + 1, n + 1);
            jac.topLeftCorner(n, n) = sys.jacobian_v(vv, ss);
            jac.topRightCorner(n, 1) = sys.ds_column(vv);
            jac.bottomLeftCorner(1, n) = vv.transpose();
            Vec rhs(n + 1);
            rhs.head(n) = -sys.residual(vv, ss);
            rhs[n] = -0.5 * (vv.squaredNorm() - 1.0);
            const Vec dz = jac.colPivHouseholderQr().solve(rhs);
            if (!dz.allFinite()) break;
            vv = (vv + dz.head(n)).normalized();
            ss += dz[n];
            res = sys.residual(vv, ss).norm();
        }
        best_res = std::min(best_res, res);
        if (res <= settings_.residual_tol) {
            if (ss <= 0.0) {  // converged onto the opposite branch; try the next candidate
                wrong_branch_only = true;
                continue;
            }
            return ReflectionSolution{sys.h.gradient(vv), ss, vv, res, settings_.max_iter};
        }
    }
    if (wrong_branch_only)
        throw OrientationError("tangency solve only converged with nonpositive ray parameter",
                               best_res);
    throw SolverError("tangency solve failed after fallback search", best_res);
}

ReflectionSolution OuterBilliardMap::reflect_minus(const Vec& x, const Vec* hint_normal) const {
    return solve_tangency(x, true, hint_normal);
}

ReflectionSolution OuterBilliardMap::reflect_plus(const Vec& x, const Vec* hint_normal) const {
    return solve_tangency(x, false, hint_normal);
}

Vec OuterBilliardMap::map(const Vec& x) const {
    const auto sol = reflect_minus(x);
    Vec y = 2.0 * sol.m - x;
    if (!(body_.gauge(y) > 1.0))
        throw ConsistencyError("billiard iterate landed inside the body");
    return y;
}

Vec OuterBilliardMap::inverse(const Vec& x) const {
    const auto sol = reflect_plus(x);
    Vec y = 2.0 * sol.m - x;
    if (!(body_.gauge(y) > 1.0))
        throw ConsistencyError("billiard iterate landed inside the body");
    return y;
}

Vec OuterBilliardMap::square(const Vec& x) const {
    const auto first = reflect_minus(x);
    const Vec y = 2.0 * first.m - x;
    const auto second = reflect_minus(y);
    Vec z = 2.0 * second.m - y;
    if (!(body_.gauge(z) > 1.0))
        throw ConsistencyError("billiard iterate landed inside the body");
    return z;
}

OrbitRecord OuterBilliardMap::orbit(const Vec& x0, int n_steps) const {
    OrbitRecord record;
    record.x0 = x0;
    record.settings = settings_;
    record.points.push_back(x0);
    record.H_values.push_back(hamiltonian_.value(x0));

    Vec x = x0;
    std::optional<Vec> warm_even, warm_odd;  // tangency normals per parity
    for (int step = 0; step < n_steps; ++step) {
        try {
            const auto first =
                reflect_minus(x, warm_even.has_value() ? &*warm_even : nullptr);
            const Vec y = 2.0 * first.m - x;
            const auto second =
                reflect_minus(y, warm_odd.has_value() ? &*warm_odd : nullptr);
            Vec z = 2.0 * second.m - y;
            if (!(body_.gauge(z) > 1.0))
                throw ConsistencyError("billiard iterate landed inside the body");
            warm_even = first.v;
            warm_odd = second.v;
            record.residual_max = std::max({record.residual_max, first.residual, second.residual});
            record.reflections.emplace_back(first, second);
            record.points.push_back(z);
            record.H_values.push_back(hamiltonian_.value(z));
            x = std::move(z);
        } catch (const Error& e) {
            record.failure_index = step;
            record.failure_message = e.what();
            break;
        }
    }
    return record;
}

}  // namespace osb
