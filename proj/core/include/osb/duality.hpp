#pragma once

// Symplectic polar duality and central symmetrization.
//
// For q on M with outward unit normal v the Reeb vector is R(q) = Jv / p(v);
// it spans the characteristic direction ker omega|_{T_q M} and is normalized
// by omega(q, R(q)) = 1. The image of q -> R(q) is the symplectic polar M*.
//
// The Hamiltonian at infinity is the 1-homogeneous function H whose unit
// level is the symplectic polar of the symmetrization M - M. In support
// coordinates it has the closed form H(x) = pbar(Jx), and its Hamiltonian
// field is the symmetrized inverse Gauss map X_H(x) = Gbar^{-1}(Jx/|x|).
// The shadow field of the second-iterate billiard dynamics is
// V(x) = 2 (n_+(x) - n_-(x)) = -2 X_H(x).

#include <cstdint>

#include "osb/convex_body.hpp"
#include "osb/symplectic.hpp"

namespace osb {

/// Reeb vector at a boundary point q (|gauge(q) - 1| <= 1e-8).
Vec reeb(const ConvexBody& body, const Vec& q);

/// Point R(support_point(v)) of the symplectic polar M*.
Vec symplectic_polar_point(const ConvexBody& body, const Vec& v);

struct InvolutionReport {
    double max_tangency_violation = 0.0;       // |omega(u, x)| / (|u| |x|), finite-difference u
    double max_normalization_violation = 0.0;  // |omega(a, -x) - 1|
    int samples = 0;
};

/// Checks R* o R = -id on sampled points of M: x must span the characteristic
/// direction of M* at a = R(x) with omega(a, -x) = 1.
InvolutionReport check_involution(const ConvexBody& body, int samples, std::uint64_t seed = 2025);

struct SymmetrizedBody {
    ConvexBody base;
    ConvexBody body;  // support function pbar(v) = p(v) + p(-v)
};

/// Central symmetrization M - M (Minkowski sum of M and -M).
SymmetrizedBody symmetrize(const ConvexBody& base);

/// Boundary point whose Reeb vector is positively proportional to x
/// (n_plus) or to -x (n_minus); requires x strictly outside M.
Vec n_plus(const ConvexBody& body, const Vec& x);
Vec n_minus(const ConvexBody& body, const Vec& x);

class HamiltonianAtInfinity {
public:
    explicit HamiltonianAtInfinity(const ConvexBody& base) : symm_(symmetrize(base)) {}

    int dim() const { return symm_.base.dim(); }
    const ConvexBody& base() const { return symm_.base; }
    const SymmetrizedBody& symmetrized() const { return symm_; }

    /// H(x) = pbar(Jx); 1-homogeneous, defines the norm |x|_H.
    double value(const Vec& x) const { return symm_.body.support(apply_J(x)); }
    double norm(const Vec& x) const { return value(x); }

    /// X_H(x) = Gbar^{-1}(Jx/|x|); 0-homogeneous.
    Vec hamiltonian_field(const Vec& x) const { return symm_.body.support_point(apply_J(x)); }

    /// -2 X_H(x); the fast evaluation of the shadow field used by the flow.
    Vec field_V(const Vec& x) const { return -2.0 * hamiltonian_field(x); }

    /// Gauge of the symmetrization (for exterior checks).
    double symmetrized_gauge(const Vec& x) const { return symm_.body.gauge(x); }

private:
    SymmetrizedBody symm_;
};

/// V(x) = 2 (n_+(x) - n_-(x)), computed through the base body; the
/// independent route vs field_V (the two are compared by the test suite).
/// Requires x outside the symmetrization.
Vec shadow_field(const HamiltonianAtInfinity& h, const Vec& x);

}  // namespace osb
