#include <algorithm>
#include <cmath>

#include "osb/dynamics.hpp"
#include "osb/errors.hpp"

namespace osb {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

}  // namespace

FlowResult flow_detailed(const HamiltonianAtInfinity& h, const Vec& x0, double t, double tol) {
    if (x0.size() != h.dim()) throw DimensionError("flow: dimension mismatch");
    if (!std::isfinite(t)) throw DomainError("flow: time must be finite");
    if (!(h.symmetrized_gauge(x0) > 1.0))
        throw DomainError("flow: start point not outside the symmetrization");

    FlowResult result;
    result.x = x0;
    const double h0_value = h.value(x0);
    if (t == 0.0) return result;

    auto field = [&](const Vec& x) { return h.field_V(x); };

    const double dir = t > 0.0 ? 1.0 : -1.0;
    const double t_end = t;
    double tcur = 0.0;
    Vec x = x0;
    Vec k1 = field(x);
    double dt = dir * std::min(std::abs(t), 0.01 * std::max(x.norm() / k1.norm(), 1e-6));
    double max_drift = 0.0;

    const int max_steps = 2'000'000;
    for (int step = 0; step < max_steps; ++step) {
        if (dir * (t_end - tcur) <= 0.0) break;
        if (dir * (tcur + dt) > dir * t_end) dt = t_end - tcur;
        if (std::abs(dt) < 1e-14 * std::abs(t_end))
            throw IntegrationError("flow: step size underflow at t = " + std::to_string(tcur));

        const Vec k2 = field(x + dt * (A21 * k1));
        const Vec k3 = field(x + dt * (A31 * k1 + A32 * k2));
        const Vec k4 = field(x + dt * (A41 * k1 + A42 * k2 + A43 * k3));
        const Vec k5 = field(x + dt * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
        const Vec k6 = field(x + dt * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
        const Vec x_new = x + dt * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
        const Vec k7 = field(x_new);  // FSAL
        const Vec err_vec =
            dt * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);

        const double scale = tol * std::max({x.norm(), x_new.norm(), 1e-30});
        const double err = err_vec.norm() / scale;
        if (err <= 1.0) {
            tcur += dt;
            x = x_new;
            k1 = k7;
            ++result.accepted_steps;
            max_drift = std::max(max_drift, std::abs(h.value(x) - h0_value));
        } else {
            ++result.rejected_steps;
        }
        const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        dt *= factor;
    }
    if (dir * (t_end - tcur) > 0.0)
        throw IntegrationError("flow: step budget exhausted before t");

    result.x = x;
    result.h_drift_rel = max_drift / std::abs(h0_value);
    return result;
}

Vec flow(const HamiltonianAtInfinity& h, const Vec& x0, double t, double tol) {
    return flow_detailed(h, x0, t, tol).x;
}

}  // namespace osb
