#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "osb/dynamics.hpp"
#include "osb/errors.hpp"

namespace osb {

namespace {

constexpr double kConvergedResidual = 1e-8;

std::optional<Vec> iterate_k(const OuterBilliardMap& map, const Vec& x, int k) {
    Vec y = x;
    try {
        for (int i = 0; i < k; ++i) y = map.map(y);
    } catch (const Error&) {
        return std::nullopt;  // left the solvable exterior; infeasible point
    }
    return y;
}

std::optional<Vec> residual_of(const OuterBilliardMap& map, const Vec& x, int k) {
    auto y = iterate_k(map, x, k);
    if (!y) return std::nullopt;
    return Vec(*y - x);
}

// Levenberg-Marquardt on r(x) = T^k(x) - x with central finite differences.
std::optional<Vec> refine_start(const OuterBilliardMap& map, Vec x, int k) {
    const int n = static_cast<int>(x.size());
    auto r0 = residual_of(map, x, k);
    if (!r0) return std::nullopt;
    Vec r = *r0;
    double lambda = 1e-3;

    for (int it = 0; it < 60; ++it) {
        if (r.norm() < kConvergedResidual * 0.1) break;

        const double fd = 1e-6 * std::max(1.0, x.norm());
        Mat jac(n, n);
        bool jac_ok = true;
        for (int j = 0; j < n && jac_ok; ++j) {
            Vec xp = x, xm = x;
            xp[j] += fd;
            xm[j] -= fd;
            auto rp = residual_of(map, xp, k);
            auto rm = residual_of(map, xm, k);
            if (!rp || !rm) {
                jac_ok = false;
                break;
            }
            jac.col(j) = (*rp - *rm) / (2.0 * fd);
        }
        if (!jac_ok) return std::nullopt;

        bool stepped = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            const Mat jtj = jac.transpose() * jac;
            Mat lhs = jtj;
            lhs.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
            const Vec dx = lhs.ldlt().solve(-jac.transpose() * r);
            if (!dx.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            auto r_try = residual_of(map, x + dx, k);
            if (r_try && r_try->norm() < r.norm()) {
                x += dx;
                r = *r_try;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e10) return std::nullopt;
        }
        if (!stepped) return std::nullopt;
    }
    if (r.norm() < kConvergedResidual) return x;
    return std::nullopt;
}

bool same_orbit(const std::vector<Vec>& a, const std::vector<Vec>& b, double tol) {
    if (a.size() != b.size()) return false;
    const int k = static_cast<int>(a.size());
    for (int shift = 0; shift < k; ++shift) {
        double worst = 0.0;
        for (int i = 0; i < k; ++i)
            worst = std::max(worst, (a[(i + shift) % k] - b[i]).norm());
        if (worst < tol) return true;
    }
    return false;
}

}  // namespace

std::vector<PeriodicOrbit> periodic_search(const ConvexBody& body, int k, int starts,
                                           std::uint64_t seed, const SolverSettings& settings) {
    if (k < 1) throw ValidationError("periodic_search needs k >= 1");
    if (starts < 1) throw ValidationError("periodic_search needs starts >= 1");

    const OuterBilliardMap map(body, settings);
    const double r_max = body.max_radius();
    const double diam = body.diameter(256);
    GaussianRng rng(seed);

    std::vector<PeriodicOrbit> found;
    for (int s = 0; s < starts; ++s) {
        const Vec dir = unit_vector(rng, body.dim());
        const double radius =
            (1.02 * r_max) * std::pow((3.5 * diam) / (1.02 * r_max), rng.uniform01());
        Vec x0 = radius * dir;

        auto x_star = refine_start(map, x0, k);
        if (!x_star) continue;

        PeriodicOrbit orbit;
        orbit.points.push_back(*x_star);
        bool ok = true;
        Vec y = *x_star;
        for (int i = 1; i < k; ++i) {
            try {
                y = map.map(y);
            } catch (const Error&) {
                ok = false;
                break;
            }
            orbit.points.push_back(y);
        }
        if (!ok) continue;
        try {
            orbit.residual = (map.map(y) - *x_star).norm();
        } catch (const Error&) {
            continue;
        }
        if (orbit.residual >= kConvergedResidual) continue;

        orbit.radius = 0.0;
        for (const Vec& p : orbit.points) orbit.radius = std::max(orbit.radius, p.norm());

        const double dedup_tol = 1e-6 * (1.0 + orbit.radius);
        bool duplicate = false;
        for (auto& existing : found) {
            if (same_orbit(existing.points, orbit.points, dedup_tol)) {
                if (orbit.residual < existing.residual) existing = orbit;
                duplicate = true;
                break;
            }
        }
        if (!duplicate) found.push_back(std::move(orbit));
    }

    std::sort(found.begin(), found.end(),
              [](const PeriodicOrbit& a, const PeriodicOrbit& b) { return a.radius < b.radius; });
    return found;
}

}  // namespace osb
