#include "osb/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "osb/errors.hpp"

namespace osb {

// ---------------------------------------------------------------------------
// homogeneous function implementations

QuadraticFormRoot::QuadraticFormRoot(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_)
        if (!(c > 0.0)) throw ValidationError("QuadraticFormRoot needs positive coefficients");
}

double QuadraticFormRoot::value(const Vec& x) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += coeffs_[i] * x[i] * x[i];
    return std::sqrt(s);
}

Vec QuadraticFormRoot::gradient(const Vec& x) const {
    const double h = value(x);
    Vec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = coeffs_[i] * x[i] / h;
    return g;
}

Mat QuadraticFormRoot::hessian(const Vec& x) const {
    const double h = value(x);
    Vec dx(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) dx[i] = coeffs_[i] * x[i];
    Mat m = Mat::Zero(x.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) m(i, i) = coeffs_[i] / h;
    m -= dx * dx.transpose() / (h * h * h);
    return m;
}

PNorm::PNorm(double p, int dim) : p_(p), dim_(dim) {
    if (!(p > 1.0)) throw ValidationError("PNorm needs p > 1");
    if (dim < 2 || dim % 2 != 0) throw ValidationError("PNorm needs an even dimension >= 2");
}

double PNorm::value(const Vec& x) const {
    const double m = x.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p_);
    return m * std::pow(s, 1.0 / p_);
}

Vec PNorm::gradient(const Vec& x) const {
    const double h = value(x);
    Vec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double u = x[i] / h;
        g[i] = (u == 0.0) ? 0.0 : std::copysign(std::pow(std::abs(u), p_ - 1.0), u);
    }
    return g;
}

Mat PNorm::hessian(const Vec& x) const {
    // (p-1)/h * (diag(|u_i|^{p-2}) - g g^T) at u = x/h; blows up on the
    // coordinate hyperplanes when p < 2.
    const double h = value(x);
    const Vec g = gradient(x);
    Vec d(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i] / h);
        d[i] = std::pow(a, p_ - 2.0);
    }
    Mat m = Mat::Zero(x.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) m(i, i) = d[i];
    m -= g * g.transpose();
    return (p_ - 1.0) / h * m;
}

HarmonicSupport2D::HarmonicSupport2D(double eps, int mode) : eps_(eps), mode_(mode) {
    if (mode < 2) throw ValidationError("HarmonicSupport2D needs mode >= 2");
    if (!(std::abs(eps) * (static_cast<double>(mode) * mode - 1.0) < 1.0))
        throw ValidationError("HarmonicSupport2D: |eps| (mode^2 - 1) < 1 required for convexity");
}

double HarmonicSupport2D::value(const Vec& x) const {
    const double r = x.norm();
    if (r == 0.0) return 0.0;
    const double th = std::atan2(x[1], x[0]);
    return r * (1.0 + eps_ * std::cos(mode_ * th));
}

Vec HarmonicSupport2D::gradient(const Vec& x) const {
    const double r = x.norm();
    if (r == 0.0) return Vec::Zero(2);
    const double th = std::atan2(x[1], x[0]);
    const double p = 1.0 + eps_ * std::cos(mode_ * th);
    const double dp = -eps_ * mode_ * std::sin(mode_ * th);
    Vec er(2), et(2);
    er << x[0] / r, x[1] / r;
    et << -er[1], er[0];
    return p * er + dp * et;
}

Mat HarmonicSupport2D::hessian(const Vec& x) const {
    const double r = x.norm();
    const double th = std::atan2(x[1], x[0]);
    const double p = 1.0 + eps_ * std::cos(mode_ * th);
    const double ddp = -eps_ * mode_ * mode_ * std::cos(mode_ * th);
    Vec et(2);
    et << -x[1] / r, x[0] / r;
    return (p + ddp) / r * et * et.transpose();
}

// ---------------------------------------------------------------------------
// BodySpec

BodySpec BodySpec::ellipsoid_spec(std::vector<double> semi_axes) {
    BodySpec s;
    s.kind = Kind::ellipsoid;
    s.semi_axes = std::move(semi_axes);
    return s;
}

BodySpec BodySpec::pball_spec(double p, int dim) {
    BodySpec s;
    s.kind = Kind::pball;
    s.p = p;
    s.dim = dim;
    return s;
}

BodySpec BodySpec::harmonic_spec(double eps, int mode) {
    BodySpec s;
    s.kind = Kind::support_harmonic;
    s.eps = eps;
    s.mode = mode;
    return s;
}

BodySpec BodySpec::constant_width_spec(double eps) {
    BodySpec s;
    s.kind = Kind::constant_width_2d;
    s.eps = eps;
    s.mode = 3;
    return s;
}

void BodySpec::validate() const {
    switch (kind) {
        case Kind::ellipsoid:
            if (semi_axes.size() < 2 || semi_axes.size() % 2 != 0)
                throw ValidationError("ellipsoid needs an even number >= 2 of semi_axes");
            for (double a : semi_axes)
                if (!(a > 0.0)) throw ValidationError("ellipsoid semi_axes must be positive");
            break;
        case Kind::pball:
            if (!(p > 1.0 && p < 2.0))
                throw ValidationError("pball exponent must satisfy 1 < p < 2");
            if (dim < 2 || dim % 2 != 0)
                throw ValidationError("pball dimension must be even and >= 2");
            break;
        case Kind::support_harmonic:
            if (mode < 2) throw ValidationError("support_harmonic mode must be >= 2");
            if (!(std::abs(eps) * (static_cast<double>(mode) * mode - 1.0) < 1.0))
                throw ValidationError("support_harmonic requires |eps| (mode^2 - 1) < 1");
            break;
        case Kind::constant_width_2d:
            if (!(std::abs(eps) < 0.125))
                throw ValidationError("constant_width_2d requires |eps| < 1/8");
            break;
    }
}

std::string BodySpec::kind_name(Kind k) {
    switch (k) {
        case Kind::ellipsoid: return "ellipsoid";
        case Kind::pball: return "pball";
        case Kind::support_harmonic: return "support_harmonic";
        case Kind::constant_width_2d: return "constant_width_2d";
    }
    return "?";
}

std::string BodySpec::describe() const {
    std::ostringstream os;
    os << kind_name(kind) << "(";
    switch (kind) {
        case Kind::ellipsoid:
            for (std::size_t i = 0; i < semi_axes.size(); ++i)
                os << (i ? "," : "") << semi_axes[i];
            break;
        case Kind::pball: os << "p=" << p << ",dim=" << dim; break;
        case Kind::support_harmonic: os << "eps=" << eps << ",mode=" << mode; break;
        case Kind::constant_width_2d: os << "eps=" << eps; break;
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// ConvexBody

ConvexBody::ConvexBody(HomogeneousFnPtr support, HomogeneousFnPtr gauge, std::string description,
                       std::optional<BodySpec> spec)
    : dim_(support ? support->dim() : (gauge ? gauge->dim() : 0)),
      support_(std::move(support)),
      gauge_(std::move(gauge)),
      description_(std::move(description)),
      spec_(std::move(spec)) {
    if (dim_ < 2 || dim_ % 2 != 0) throw DimensionError("body dimension must be even and >= 2");
    if (support_ && gauge_ && support_->dim() != gauge_->dim())
        throw DimensionError("support/gauge dimension mismatch");
}

ConvexBody ConvexBody::from_gauge(HomogeneousFnPtr gauge, std::string description) {
    return ConvexBody(nullptr, std::move(gauge), std::move(description));
}

const HomogeneousConvexFunction& ConvexBody::support_fn() const {
    if (!support_) throw DomainError("body has no support representation");
    return *support_;
}

double ConvexBody::support(const Vec& v) const {
    if (v.size() != dim_) throw DimensionError("support: dimension mismatch");
    if (support_) return support_->value(v);
    const double n = v.norm();
    return n * support_via_gauge(*gauge_, v).value;
}

Vec ConvexBody::support_point(const Vec& v) const {
    if (v.size() != dim_) throw DimensionError("support_point: dimension mismatch");
    if (support_) return support_->gradient(v);
    return support_via_gauge(*gauge_, v).point;
}

double ConvexBody::gauge(const Vec& x) const {
    if (x.size() != dim_) throw DimensionError("gauge: dimension mismatch");
    const double n = x.norm();
    if (n == 0.0) return 0.0;
    if (gauge_) return gauge_->value(x);
    return n / radial_point(*support_, x).r;
}

Vec ConvexBody::gauge_gradient(const Vec& x) const {
    if (x.size() != dim_) throw DimensionError("gauge_gradient: dimension mismatch");
    if (x.norm() == 0.0) throw DomainError("gauge_gradient undefined at the origin");
    if (gauge_) return gauge_->gradient(x);
    // grad f = v / p(v) at the outward normal v of the radial boundary point.
    const auto sol = radial_point(*support_, x);
    return sol.v / support_->value(sol.v);
}

Vec ConvexBody::gauss_map(const Vec& q) const {
    if (q.size() != dim_) throw DimensionError("gauss_map: dimension mismatch");
    if (gauge_) {
        const double f = gauge_->value(q);
        if (std::abs(f - 1.0) > kOnBodyTol)
            throw DomainError("gauss_map: point not on the body (gauge " + std::to_string(f) + ")");
        return gauge_->gradient(q).normalized();
    }
    const auto sol = radial_point(*support_, q);
    const double f = q.norm() / sol.r;
    if (std::abs(f - 1.0) > kOnBodyTol)
        throw DomainError("gauss_map: point not on the body (gauge " + std::to_string(f) + ")");
    return sol.v;
}

double ConvexBody::diameter(int samples) const {
    if (samples < 2) throw ValidationError("diameter needs samples >= 2");
    double best = 0.0;
    auto width = [&](const Vec& v) { return support(v) + support(-v); };
    for (int i = 0; i < dim_; ++i) {
        Vec e = Vec::Zero(dim_);
        e[i] = 1.0;
        best = std::max(best, width(e));
    }
    if (dim_ == 2) {
        const int grid = std::max(samples, 512);
        for (int i = 0; i < grid; ++i) {
            const double th = std::numbers::pi * i / grid;  // width is even in v
            Vec v(2);
            v << std::cos(th), std::sin(th);
            best = std::max(best, width(v));
        }
    } else {
        for (const Vec& v : sphere_sample(dim_, samples, /*seed=*/17))
            best = std::max(best, width(v));
    }
    return best;
}

double ConvexBody::max_radius(int samples) const {
    double best = 0.0;
    for (int i = 0; i < dim_; ++i) {
        Vec e = Vec::Zero(dim_);
        e[i] = 1.0;
        best = std::max({best, support_point(e).norm(), support_point(-e).norm()});
    }
    for (const Vec& v : sphere_sample(dim_, samples, /*seed=*/18))
        best = std::max(best, support_point(v).norm());
    return best;
}

ConvexityReport ConvexBody::validate_convexity(int samples) const {
    if (samples < 1) throw ValidationError("validate_convexity needs samples >= 1");
    ConvexityReport report;
    report.samples = 0;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();

    std::vector<Vec> dirs;
    for (int i = 0; i < dim_; ++i) {  // axes included: p-ball degeneracy sits there
        Vec e = Vec::Zero(dim_);
        e[i] = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    for (const Vec& v : sphere_sample(dim_, samples, /*seed=*/19)) dirs.push_back(v);

    for (const Vec& v : dirs) {
        Mat h;
        Vec normal = v;
        if (support_) {
            h = support_->hessian(v);
        } else {
            // gauge path: tangential Hessian of f at the boundary point
            const Vec q = support_point(v);
            h = gauge_->hessian(q);
            normal = gauge_->gradient(q).normalized();
        }
        const Mat basis = tangent_basis(normal);
        const Mat t = basis.transpose() * h * basis;
        Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (t + t.transpose()));
        const double mineig = eig.eigenvalues().minCoeff();
        if (mineig < report.min_eigenvalue) {
            report.min_eigenvalue = mineig;
            report.worst_direction = v;
        }
        ++report.samples;
    }
    report.pass = report.min_eigenvalue > 1e-9;
    return report;
}

ConvexBody ConvexBody::scaled(double factor) const {
    if (!(factor > 0.0)) throw ValidationError("scale factor must be positive");
    HomogeneousFnPtr s = support_ ? std::make_shared<ScaledFunction>(support_, factor) : nullptr;
    HomogeneousFnPtr g = gauge_ ? std::make_shared<ScaledFunction>(gauge_, 1.0 / factor) : nullptr;
    std::ostringstream os;
    os << factor << "*" << description_;
    return ConvexBody(std::move(s), std::move(g), os.str());
}

ConvexBody make_body(const BodySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case BodySpec::Kind::ellipsoid: {
            std::vector<double> cs(spec.semi_axes.size()), cg(spec.semi_axes.size());
            for (std::size_t i = 0; i < spec.semi_axes.size(); ++i) {
                cs[i] = spec.semi_axes[i] * spec.semi_axes[i];
                cg[i] = 1.0 / cs[i];
            }
            return ConvexBody(std::make_shared<QuadraticFormRoot>(cs),
                              std::make_shared<QuadraticFormRoot>(cg), spec.describe(), spec);
        }
        case BodySpec::Kind::pball: {
            const double q = spec.p / (spec.p - 1.0);
            return ConvexBody(std::make_shared<PNorm>(q, spec.dim),
                              std::make_shared<PNorm>(spec.p, spec.dim), spec.describe(), spec);
        }
        case BodySpec::Kind::support_harmonic:
            return ConvexBody(std::make_shared<HarmonicSupport2D>(spec.eps, spec.mode), nullptr,
                              spec.describe(), spec);
        case BodySpec::Kind::constant_width_2d:
            return ConvexBody(std::make_shared<HarmonicSupport2D>(spec.eps, 3), nullptr,
                              spec.describe(), spec);
    }
    throw ValidationError("unknown body kind");
}

}  // namespace osb
