#include <algorithm>
#include <cmath>
#include <numbers>

#include "osb/errors.hpp"
#include "osb/experiments.hpp"

namespace osb {

double ConstantsReport::rho(int k) const {
    if (k < 1) throw ValidationError("rho(k) needs k >= 1");
    const double kk = static_cast<double>(k - 1);
    return std::max({delta_inv + 2.0 * kk * C1, 2.0 * kk * C1 / eta, 24.0 * C / m});
}

namespace {

// Directions used by the extremal estimators: seeded sphere samples plus the
// coordinate axes (so axis-aligned ellipsoid extrema are hit exactly) plus a
// dense angle grid in the plane.
std::vector<Vec> extremal_directions(int dim, int samples, std::uint64_t seed) {
    std::vector<Vec> dirs;
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::Zero(dim);
        e[i] = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    if (dim == 2) {
        const int grid = std::max(samples, 2048);
        for (int i = 0; i < grid; ++i) {
            const double th = 2.0 * std::numbers::pi * i / grid;
            Vec v(2);
            v << std::cos(th), std::sin(th);
            dirs.push_back(v);
        }
    } else {
        for (Vec& v : sphere_sample(dim, samples, seed)) dirs.push_back(std::move(v));
    }
    return dirs;
}

double angle_between(const Vec& a, const Vec& b) {
    const double c = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace

ConstantsReport constants_estimate(const ConvexBody& body, int samples,
                                   const std::vector<int>& k_list,
                                   const SolverSettings& settings) {
    if (samples < 100) throw ValidationError("constants_estimate needs samples >= 100");
    const int dim = body.dim();
    ConstantsReport rep;

    rep.C1 = body.diameter(std::max(samples, 512));

    // ell: sampled minimum of (normal angle)/(boundary chord) over close
    // pairs, separations spanning two decades. A statistical lower-constant
    // estimate; the sampled min can only overestimate the true infimum.
    {
        GaussianRng rng(0x5eedu);
        double ell = std::numeric_limits<double>::infinity();
        for (int i = 0; i < samples; ++i) {
            const Vec v = unit_vector(rng, dim);
            Vec t = unit_vector(rng, dim);
            t -= t.dot(v) * v;
            if (t.norm() < 1e-12) continue;
            t.normalize();
            const Vec q0 = body.support_point(v);
            for (int j = 0; j < 9; ++j) {
                const double tau = 1e-3 * std::pow(10.0, j / 4.0);
                const Vec v2 = std::cos(tau) * v + std::sin(tau) * t;
                const double dist = (body.support_point(v2) - q0).norm();
                if (dist > 0.0) ell = std::min(ell, tau / dist);
            }
        }
        rep.ell = ell;
    }
    rep.C = 6.0 * rep.C1 / rep.ell;

    const HamiltonianAtInfinity H(body);

    // m and mu from directional extrema (V and H are 0-/1-homogeneous).
    {
        double vmin = std::numeric_limits<double>::infinity();
        double hmax = 0.0, hinvmax = 0.0;
        for (const Vec& u : extremal_directions(dim, samples, 0x6eedu)) {
            vmin = std::min(vmin, H.field_V(u).norm());
            const double h = H.value(u);
            hmax = std::max(hmax, h);
            hinvmax = std::max(hinvmax, 1.0 / h);
        }
        rep.m = vmin;
        rep.mu = std::max(hmax, hinvmax);
    }

    // delta: tangency angles alpha(x), alpha(y) measured on radii just
    // outside the body; 1/delta = max(2 C1, first radius with max alpha <= pi/2).
    {
        const OuterBilliardMap map(body, settings);
        const double r_max = body.max_radius();
        const std::vector<double> factors = {1.05, 1.2, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
        const auto dirs = sphere_sample(dim, 32, 0x7eedu);
        for (double f : factors) {
            const double r = f * r_max;
            double worst = 0.0;
            for (const Vec& u : dirs) {
                const Vec x = r * u;
                try {
                    const auto sol = map.reflect_minus(x);
                    worst = std::max(worst, angle_between(apply_J(x), sol.v));
                    const Vec y = 2.0 * sol.m - x;
                    const auto soly = map.reflect_minus(y);
                    worst = std::max(worst, angle_between(apply_J(y), soly.v));
                } catch (const Error&) {
                    worst = std::numbers::pi;  // unresolvable: radius not admissible
                }
            }
            rep.alpha_radii.push_back(r);
            rep.alpha_max.push_back(worst);
        }
        double r_alpha = rep.alpha_radii.back();
        for (std::size_t j = 0; j < rep.alpha_max.size(); ++j) {
            bool ok = true;
            for (std::size_t l = j; l < rep.alpha_max.size(); ++l)
                ok = ok && rep.alpha_max[l] <= 0.5 * std::numbers::pi;
            if (ok) {
                r_alpha = rep.alpha_radii[j];
                break;
            }
        }
        rep.delta_inv = std::max(2.0 * rep.C1, r_alpha);
    }

    // delta~ and C~ from the flow Taylor residual t(r) = r * max_dirs
    // |phi_1(x) - x - V(x)|; 1/delta~ is the first radius from which t(r)
    // stops growing (within 5%), C~ the max of t beyond it.
    {
        const std::vector<double> factors = {1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0};
        const auto dirs = sphere_sample(dim, 16, 0x8eedu);
        for (double f : factors) {
            const double r = f * rep.C1;
            double worst = 0.0;
            for (const Vec& u : dirs) {
                const Vec x = r * u;
                const Vec residual = flow(H, x, 1.0) - x - H.field_V(x);
                worst = std::max(worst, residual.norm() * r);
            }
            rep.taylor_radii.push_back(r);
            rep.taylor_scaled_residual.push_back(worst);
        }
        std::size_t jstar = rep.taylor_radii.size() - 1;
        for (std::size_t j = 0; j < rep.taylor_radii.size(); ++j) {
            bool ok = true;
            for (std::size_t l = j + 1; l < rep.taylor_radii.size(); ++l)
                ok = ok && rep.taylor_scaled_residual[l] <=
                               1.05 * rep.taylor_scaled_residual[j];
            if (ok) {
                jstar = j;
                break;
            }
        }
        rep.delta_tilde_inv = rep.taylor_radii[jstar];
        double ct = 0.0;
        for (std::size_t l = jstar; l < rep.taylor_radii.size(); ++l)
            ct = std::max(ct, rep.taylor_scaled_residual[l]);
        rep.C_tilde = ct;
    }

    rep.Delta_inv = std::max(rep.delta_inv, rep.delta_tilde_inv);
    rep.C_bar = rep.c_bar_formula();

    // eta: bisection on the sampled modulus of continuity of V over the
    // shell 1/2 <= |x| <= 3/2 against the target m/2, capped at 1/2.
    {
        const int shell_n = std::min(2 * samples, 700);
        GaussianRng rng(0x9eedu);
        std::vector<Vec> pts;
        std::vector<Vec> vals;
        pts.reserve(shell_n);
        for (int i = 0; i < shell_n; ++i) {
            const Vec u = unit_vector(rng, dim);
            const double r = rng.uniform(0.5, 1.5);
            pts.push_back(r * u);
            vals.push_back(H.field_V(pts.back()));
        }
        auto modulus_below = [&](double eta) {
            int pairs = 0;
            for (int i = 0; i < shell_n; ++i)
                for (int j = i + 1; j < shell_n; ++j) {
                    if ((pts[i] - pts[j]).norm() >= eta) continue;
                    ++pairs;
                    if ((vals[i] - vals[j]).norm() >= 0.5 * rep.m) return std::pair{false, pairs};
                }
            return std::pair{true, pairs};
        };
        double lo = 0.0, hi = 0.5;
        auto top = modulus_below(0.5);
        if (top.first) {
            if (top.second == 0)
                throw EstimationError("eta: shell sampling too coarse (no pairs within 1/2)");
            rep.eta = 0.5;
        } else {
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (modulus_below(mid).first)
                    lo = mid;
                else
                    hi = mid;
            }
            if (lo <= 0.0 || !modulus_below(lo).second)
                throw EstimationError("eta: bisection bracket failure (resolution)");
            rep.eta = lo;
        }
    }

    for (int k : k_list) rep.rho_table.emplace_back(k, rep.rho(k));
    return rep;
}

}  // namespace osb
