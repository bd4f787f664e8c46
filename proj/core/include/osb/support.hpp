#pragma once

// Positively 1-homogeneous convex functions h : R^n -> R with first and
// second derivatives. Both representations of a convex body live here:
//
//   * the support function (1-homogeneous extension of p on the sphere);
//     its gradient at a unit normal v is the boundary point with outward
//     normal v, and its Hessian restricted to v-perp is the reverse
//     Weingarten operator (principal radii of curvature);
//   * the gauge function f with M = {f = 1}.
//
// Gradients are 0-homogeneous, Hessians (-1)-homogeneous with the radial
// direction in their kernel.

#include <cmath>
#include <memory>
#include <vector>

#include "osb/symplectic.hpp"

namespace osb {

class HomogeneousConvexFunction {
public:
    virtual ~HomogeneousConvexFunction() = default;

    virtual int dim() const = 0;
    virtual double value(const Vec& x) const = 0;
    virtual Vec gradient(const Vec& x) const = 0;
    virtual Mat hessian(const Vec& x) const = 0;
};

using HomogeneousFnPtr = std::shared_ptr<const HomogeneousConvexFunction>;

/// sqrt(sum c_i x_i^2), c_i > 0.  Support function of an ellipsoid for
/// c_i = a_i^2 and its gauge for c_i = 1/a_i^2; the round sphere for c = 1.
class QuadraticFormRoot final : public HomogeneousConvexFunction {
public:
    explicit QuadraticFormRoot(std::vector<double> coeffs);

    int dim() const override { return static_cast<int>(coeffs_.size()); }
    double value(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;

private:
    std::vector<double> coeffs_;
};

/// The p-norm, p > 1.  Gauge of the p-ball; support function of the
/// q-ball with 1/p + 1/q = 1.  Second derivatives degenerate on the
/// coordinate hyperplanes when p < 2 (curvature work must use the dual).
class PNorm final : public HomogeneousConvexFunction {
public:
    PNorm(double p, int dim);

    int dim() const override { return dim_; }
    double value(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;

    double exponent() const { return p_; }

private:
    double p_;
    int dim_;
};

/// Planar support function r * (1 + eps cos(m theta)) as a 1-homogeneous
/// function of (x, y).  Constant width for odd m; convex iff
/// |eps| (m^2 - 1) < 1.
class HarmonicSupport2D final : public HomogeneousConvexFunction {
public:
    HarmonicSupport2D(double eps, int mode);

    int dim() const override { return 2; }
    double value(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;

    double eps() const { return eps_; }
    int mode() const { return mode_; }

private:
    double eps_;
    int mode_;
};

/// h(x) + h(-x): support function of the central symmetrization M - M.
class SymmetrizedFunction final : public HomogeneousConvexFunction {
public:
    explicit SymmetrizedFunction(HomogeneousFnPtr base) : base_(std::move(base)) {}

    int dim() const override { return base_->dim(); }
    double value(const Vec& x) const override { return base_->value(x) + base_->value(-x); }
    Vec gradient(const Vec& x) const override {
        return base_->gradient(x) - base_->gradient(-x);
    }
    Mat hessian(const Vec& x) const override { return base_->hessian(x) + base_->hessian(-x); }

private:
    HomogeneousFnPtr base_;
};

/// c * h(x), c > 0.
class ScaledFunction final : public HomogeneousConvexFunction {
public:
    ScaledFunction(HomogeneousFnPtr base, double factor)
        : base_(std::move(base)), factor_(factor) {}

    int dim() const override { return base_->dim(); }
    double value(const Vec& x) const override { return factor_ * base_->value(x); }
    Vec gradient(const Vec& x) const override { return factor_ * base_->gradient(x); }
    Mat hessian(const Vec& x) const override { return factor_ * base_->hessian(x); }

private:
    HomogeneousFnPtr base_;
    double factor_;
};

}  // namespace osb
