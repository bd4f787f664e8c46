#pragma once

// Constrained Newton solves shared by the body representations and the
// billiard dynamics. All systems are solved in support (Gauss-map)
// coordinates: the unknown normal v lives on the unit sphere and is
// retracted back after every update; the sphere constraint is handled by
// bordering the Jacobian with the row (v^T, 0).

#include "osb/support.hpp"

namespace osb {

struct NewtonOptions {
    double tol = 1e-12;  // absolute residual, bodies are O(1)-sized
    int max_iter = 50;
};

struct RadialSolution {
    Vec v;           // unit outward normal at the boundary point
    double r;        // boundary radius along the requested direction
    double residual;
    int iterations;
};

/// Boundary point of {h <= h-value 1 body} along the ray `direction`:
/// solves grad h(v) = r * u with |v| = 1, r > 0, where u = direction/|direction|.
RadialSolution radial_point(const HomogeneousConvexFunction& support, const Vec& direction,
                            const NewtonOptions& opts = {});

struct SupportSolution {
    Vec point;       // argmax of <v, x> over {f <= 1}
    double value;    // support value <v, point>
    double residual;
    int iterations;
};

/// Support point from a gauge representation: maximizes <v, x> over {f <= 1}
/// by solving grad f(x) = lambda v, f(x) = 1.
SupportSolution support_via_gauge(const HomogeneousConvexFunction& gauge, const Vec& direction,
                                  const NewtonOptions& opts = {});

}  // namespace osb
