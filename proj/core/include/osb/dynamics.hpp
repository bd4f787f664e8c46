#pragma once

// The outer symplectic billiard map T(x) = 2 m_-(x) - x, its inverse and
// square, orbits of T^2, and the flow of the shadow field V.
//
// Tangency points are solved in support coordinates: unknowns (v, s) with
// support_point(v) - x = s * Jv / p(v), |v| = 1, s > 0. Far from the body
// the cold start v0 = +-Jx/|x| lands next to the solution (m_- approaches
// n_- at rate 1/|x|); orbits warm-start each solve from the previous
// tangency normal of the same parity.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osb/convex_body.hpp"
#include "osb/duality.hpp"

namespace osb {

struct SolverSettings {
    double residual_tol = 1e-12;
    int max_iter = 50;
    bool warm_start = true;
    int fallback_grid = 720;  // candidates per great circle / sphere scan

    void validate() const {
        if (!(residual_tol > 0.0)) throw ValidationError("residual_tol must be > 0");
        if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
        if (fallback_grid < 8) throw ValidationError("fallback_grid must be >= 8");
    }
};

/// Points closer to M than this (in gauge value) are rejected as too close
/// to the tangency degeneracy.
inline constexpr double kExteriorMargin = 1e-6;

struct ReflectionSolution {
    Vec m;            // tangency point on M
    double s = 0.0;   // positive ray parameter, m - x = s R(m) (minus branch)
    Vec v;            // unit outward normal at m
    double residual = 0.0;
    int iterations = 0;
};

struct OrbitRecord {
    Vec x0;
    std::vector<Vec> points;    // x, T^2 x, T^4 x, ...
    std::vector<std::pair<ReflectionSolution, ReflectionSolution>> reflections;  // per step
    std::vector<double> H_values;  // per point
    double residual_max = 0.0;
    SolverSettings settings;
    int failure_index = -1;     // step at which the orbit was truncated
    std::string failure_message;

    int steps_completed() const { return static_cast<int>(points.size()) - 1; }
    bool complete() const { return failure_index < 0; }
};

class OuterBilliardMap {
public:
    explicit OuterBilliardMap(ConvexBody body, SolverSettings settings = {});

    const ConvexBody& body() const { return body_; }
    const SolverSettings& settings() const { return settings_; }

    /// Tangency point m_-(x): the ray from x in the positive characteristic
    /// direction, m - x = s R(m), s > 0.
    ReflectionSolution reflect_minus(const Vec& x, const Vec* hint_normal = nullptr) const;

    /// Tangency point m_+(x): x - m = s R(m), s > 0.
    ReflectionSolution reflect_plus(const Vec& x, const Vec* hint_normal = nullptr) const;

    Vec map(const Vec& x) const;          // T
    Vec inverse(const Vec& x) const;      // T^{-1}
    Vec square(const Vec& x) const;       // T^2

    /// n_steps iterations of T^2 with warm-started solves; truncates at the
    /// first failure and records the failure index.
    OrbitRecord orbit(const Vec& x0, int n_steps) const;

private:
    ReflectionSolution solve_tangency(const Vec& x, bool minus_branch,
                                      const Vec* hint_normal) const;
    ReflectionSolution fallback_search(const Vec& x, bool minus_branch) const;

    ConvexBody body_;
    SolverSettings settings_;
    HamiltonianAtInfinity hamiltonian_;
};

struct FlowResult {
    Vec x;
    double h_drift_rel = 0.0;
    int accepted_steps = 0;
    int rejected_steps = 0;
};

/// Adaptive Dormand-Prince 5(4) integration of xdot = V(x) = -2 X_H(x);
/// `tol` is the relative step tolerance. H-drift along the trajectory is
/// monitored and returned.
FlowResult flow_detailed(const HamiltonianAtInfinity& h, const Vec& x0, double t,
                         double tol = 1e-10);
Vec flow(const HamiltonianAtInfinity& h, const Vec& x0, double t, double tol = 1e-10);

struct PeriodicOrbit {
    std::vector<Vec> points;  // x, T x, ..., T^{k-1} x
    double radius = 0.0;      // max |point|
    double residual = 0.0;    // |T^k x - x|
};

/// Multistart damped least squares on |T^k(x) - x|^2 over seeded starting
/// points; returns orbits with terminal residual < 1e-8, deduplicated up to
/// cyclic relabeling. An empty list is a valid result.
std::vector<PeriodicOrbit> periodic_search(const ConvexBody& body, int k, int starts,
                                           std::uint64_t seed, const SolverSettings& settings = {});

}  // namespace osb
