#pragma once

// Smooth quadratically convex hypersurfaces M in R^{2d} with the origin
// strictly inside, given by a support function and, when a closed form
// exists, also by a gauge function. The catalog covers the bodies used by
// the experiments: ellipsoids, p-balls (1 < p < 2, via the dual-norm
// support function), and planar harmonic-support bodies including the
// smooth constant-width family.

#include <optional>
#include <string>
#include <vector>

#include "osb/solvers.hpp"
#include "osb/support.hpp"

namespace osb {

struct BodySpec {
    enum class Kind { ellipsoid, pball, support_harmonic, constant_width_2d };

    Kind kind = Kind::ellipsoid;
    std::vector<double> semi_axes;  // ellipsoid
    double p = 1.5;                 // pball exponent, 1 < p < 2
    int dim = 2;                    // pball ambient dimension
    double eps = 0.1;               // harmonic amplitude
    int mode = 3;                   // harmonic mode (constant width: 3)

    static BodySpec ellipsoid_spec(std::vector<double> semi_axes);
    static BodySpec pball_spec(double p, int dim = 2);
    static BodySpec harmonic_spec(double eps, int mode);
    static BodySpec constant_width_spec(double eps);

    /// Throws ValidationError when parameters leave their validity range
    /// (e.g. constant width needs |eps| < 1/8 for convexity).
    void validate() const;

    std::string describe() const;
    static std::string kind_name(Kind k);
};

struct ConvexityReport {
    bool pass = false;
    double min_eigenvalue = 0.0;
    Vec worst_direction;
    int samples = 0;
};

class ConvexBody {
public:
    /// Support representation, optionally with a closed-form gauge.
    ConvexBody(HomogeneousFnPtr support, HomogeneousFnPtr gauge, std::string description,
               std::optional<BodySpec> spec = std::nullopt);

    /// Gauge-only body; support values go through constrained maximization.
    static ConvexBody from_gauge(HomogeneousFnPtr gauge, std::string description);

    int dim() const { return dim_; }
    const std::string& description() const { return description_; }
    const std::optional<BodySpec>& spec() const { return spec_; }
    bool has_support_form() const { return support_ != nullptr; }
    bool has_gauge_form() const { return gauge_ != nullptr; }
    const HomogeneousConvexFunction& support_fn() const;
    HomogeneousFnPtr support_fn_ptr() const { return support_; }
    HomogeneousFnPtr gauge_fn_ptr() const { return gauge_; }

    /// Support function p(v); evaluated as the 1-homogeneous extension for
    /// non-unit v.
    double support(const Vec& v) const;

    /// Boundary point with outward unit normal v/|v|  (the inverse Gauss map,
    /// x(v) = p(v) v + grad_sphere p(v)).
    Vec support_point(const Vec& v) const;

    /// Gauge f(x): 1-homogeneous, M = {f = 1}, f(0) = 0.
    double gauge(const Vec& x) const;

    /// grad f(x); 0-homogeneous, satisfies the Euler identity <grad f, x> = f.
    Vec gauge_gradient(const Vec& x) const;

    /// Unit outward normal at a boundary point q (|gauge(q) - 1| <= 1e-8).
    Vec gauss_map(const Vec& q) const;

    /// Max width max_v (p(v) + p(-v)) over sampled directions (plus the
    /// coordinate axes, so axis-aligned ellipsoids are exact).
    double diameter(int samples) const;

    /// Largest boundary radius over sampled directions.
    double max_radius(int samples = 256) const;

    /// Minimum eigenvalue of the tangential support Hessian (principal radii
    /// of curvature) over sampled normals; gauge-only bodies check the
    /// tangential gauge Hessian instead.
    ConvexityReport validate_convexity(int samples) const;

    ConvexBody scaled(double factor) const;

private:
    int dim_;
    HomogeneousFnPtr support_;
    HomogeneousFnPtr gauge_;
    std::string description_;
    std::optional<BodySpec> spec_;
};

/// Build a catalog body from its validated spec.
ConvexBody make_body(const BodySpec& spec);

/// Tolerance accepted by gauss_map for "q lies on M".
inline constexpr double kOnBodyTol = 1e-8;

}  // namespace osb
