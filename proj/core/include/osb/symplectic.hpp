#pragma once

// Ambient linear-symplectic arithmetic in R^{2d}.
//
// Convention, used everywhere in this library:
//   J (x1, y1, ..., xd, yd) = (-y1, x1, ..., -yd, xd)
//   omega(u, v) = <J u, v>,   so omega(e1, e2) = 1
// With this choice the Hamiltonian vector field of a function f is
// X_f = J grad f, i.e. the characteristic direction of a level hypersurface
// is J applied to its outward normal.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "osb/errors.hpp"

namespace osb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline void require_even_dim(const Vec& u) {
    if (u.size() < 2 || u.size() % 2 != 0)
        throw DimensionError("vector dimension must be even and >= 2, got " +
                             std::to_string(u.size()));
}

inline void require_same_dim(const Vec& u, const Vec& v) {
    require_even_dim(u);
    if (u.size() != v.size())
        throw DimensionError("dimension mismatch: " + std::to_string(u.size()) +
                             " vs " + std::to_string(v.size()));
}

/// Blockwise complex rotation, J^2 = -id, |Ju| = |u|.
inline Vec apply_J(const Vec& u) {
    require_even_dim(u);
    Vec r(u.size());
    for (Eigen::Index i = 0; i + 1 < u.size(); i += 2) {
        r[i] = -u[i + 1];
        r[i + 1] = u[i];
    }
    return r;
}

/// J^{-1} = -J.
inline Vec apply_J_inverse(const Vec& u) { return -apply_J(u); }

/// Standard symplectic form, omega(u, v) = <Ju, v>.
inline double omega(const Vec& u, const Vec& v) {
    require_same_dim(u, v);
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < u.size(); i += 2)
        s += u[i] * v[i + 1] - u[i + 1] * v[i];
    return s;
}

/// Matrix Omega with omega(u, v) = u^T Omega v (Omega = J^T).
inline Mat omega_matrix(int dim) {
    if (dim < 2 || dim % 2 != 0)
        throw DimensionError("omega_matrix needs an even dimension >= 2");
    Mat m = Mat::Zero(dim, dim);
    for (int i = 0; i + 1 < dim; i += 2) {
        m(i, i + 1) = 1.0;
        m(i + 1, i) = -1.0;
    }
    return m;
}

/// splitmix64: tiny fully-specified generator, identical output on every
/// platform. Seeds the experiments so runs are reproducible byte for byte.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1].
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }
};

/// Deterministic Gaussian stream (Box-Muller over splitmix64).
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : rng_(seed) {}

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.uniform01();
        const double u2 = rng_.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double uniform01() { return rng_.uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform01(); }

    std::uint64_t next_u64() { return rng_.next(); }

private:
    SplitMix64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// One uniformly distributed unit vector.
inline Vec unit_vector(GaussianRng& rng, int dim) {
    Vec v(dim);
    double n2 = 0.0;
    do {
        for (int i = 0; i < dim; ++i) v[i] = rng.gaussian();
        n2 = v.squaredNorm();
    } while (n2 < 1e-300);
    return v / std::sqrt(n2);
}

/// n deterministic samples on S^{dim-1}; identical sequence for a fixed seed.
inline std::vector<Vec> sphere_sample(int dim, int n, std::uint64_t seed) {
    if (dim < 2 || dim % 2 != 0)
        throw DimensionError("sphere_sample needs an even dimension >= 2");
    std::vector<Vec> out;
    if (n <= 0) return out;
    out.reserve(static_cast<std::size_t>(n));
    GaussianRng rng(seed);
    for (int i = 0; i < n; ++i) out.push_back(unit_vector(rng, dim));
    return out;
}

/// Orthonormal basis of the tangent space v-perp (columns), |v| = 1 assumed.
inline Mat tangent_basis(const Vec& v) {
    const Eigen::Index n = v.size();
    // Householder vector w mapping e_k -> v, k = argmax |v_i|; the remaining
    // columns of the reflection are an orthonormal frame of v-perp.
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    Vec w = v;
    w[k] += (v[k] >= 0.0 ? 1.0 : -1.0);
    w /= w.norm();
    Mat h = Mat::Identity(n, n) - 2.0 * w * w.transpose();
    Mat basis(n, n - 1);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j == k) continue;
        basis.col(col++) = h.col(j);
    }
    return basis;
}

}  // namespace osb
