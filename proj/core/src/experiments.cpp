#include "osb/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "osb/errors.hpp"

namespace osb {

bool ExperimentReport::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

void ExperimentReport::add_verdict(std::string name, double value, double threshold,
                                   std::string relation) {
    Verdict v;
    v.name = std::move(name);
    v.value = value;
    v.threshold = threshold;
    v.relation = std::move(relation);
    if (v.relation == "<=")
        v.pass = value <= threshold;
    else if (v.relation == ">=")
        v.pass = value >= threshold;
    else
        v.pass = value == threshold;
    verdicts.push_back(std::move(v));
}

const Table* ExperimentReport::find_table(const std::string& name) const {
    for (const auto& [n, t] : tables)
        if (n == name) return &t;
    return nullptr;
}

namespace {

ExperimentReport make_report(std::string name, const ConvexBody& body, std::uint64_t seed) {
    ExperimentReport r;
    r.experiment = std::move(name);
    r.body_description = body.description();
    r.body = body.spec();
    r.seed = seed;
    return r;
}

std::string describe_point(const Vec& x) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(x[i]);
    }
    return s + ")";
}

[[noreturn]] void rethrow_with_sample(const Error& e, double r, std::size_t dir_index,
                                      const Vec& x) {
    throw Error(std::string(e.what()) + " [sample r=" + std::to_string(r) +
                " dir=" + std::to_string(dir_index) + " x=" + describe_point(x) + "]");
}

// Exterior radius from which a body's symmetrization is safely enclosed.
double symmetrization_clearance(const HamiltonianAtInfinity& h) {
    return 1.05 * h.symmetrized().body.max_radius();
}

}  // namespace

// ---------------------------------------------------------------------------

ExperimentReport duality_suite(const ConvexBody& body, int samples, std::uint64_t seed) {
    if (samples < 1) throw ValidationError("duality_suite needs samples >= 1");
    ExperimentReport rep = make_report("duality-check", body, seed);
    rep.params.emplace_back("samples", samples);

    const int dim = body.dim();
    const HamiltonianAtInfinity H(body);
    const SymmetrizedBody& symm = H.symmetrized();

    double reeb_viol = 0.0, symm_viol = 0.0, nbar_viol = 0.0, unit_level_viol = 0.0;
    for (const Vec& v : sphere_sample(dim, samples, seed)) {
        // Reeb normalization omega(q, R(q)) = 1 through the gauss_map path.
        const Vec q = body.support_point(v);
        const Vec r = reeb(body, q);
        reeb_viol = std::max(reeb_viol, std::abs(omega(q, r) - 1.0));

        // Gbar^{-1}(v) = G^{-1}(v) - G^{-1}(-v).
        const Vec lhs = symm.body.support_point(v);
        const Vec rhs = body.support_point(v) - body.support_point(-v);
        symm_viol = std::max(symm_viol, (lhs - rhs).norm());

        // H(Rbar(qbar)) = 1: the unit level of H is the polar of the
        // symmetrization.
        const Vec rbar = symplectic_polar_point(symm.body, v);
        unit_level_viol = std::max(unit_level_viol, std::abs(H.value(rbar) - 1.0));
    }

    GaussianRng rng(seed ^ 0xabcdefULL);
    const double r_lo = symmetrization_clearance(H);
    double prop_viol = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Vec u = unit_vector(rng, dim);
        const double radius = rng.uniform(std::max(2.0, r_lo), 100.0);
        const Vec x = radius * u;

        // nbar_+(x) = -nbar_-(x).
        const Vec nb_plus = n_plus(symm.body, x);
        const Vec nb_minus = n_minus(symm.body, x);
        nbar_viol = std::max(nbar_viol, (nb_plus + nb_minus).norm());

        // V = -2 X_H: the n_+- route against the symmetrized-support route.
        const Vec v1 = shadow_field(H, x);
        const Vec v2 = H.field_V(x);
        prop_viol = std::max(prop_viol, (v1 - v2).norm() / v1.norm());
    }

    const auto inv = check_involution(body, samples, seed ^ 0x123457ULL);

    rep.add_verdict("reeb_normalization", reeb_viol, 1e-10, "<=");
    rep.add_verdict("symmetrization_identity", symm_viol, 1e-10, "<=");
    rep.add_verdict("nbar_antisymmetry", nbar_viol, 1e-10, "<=");
    rep.add_verdict("h_unit_level", unit_level_viol, 1e-10, "<=");
    rep.add_verdict("involution_normalization", inv.max_normalization_violation, 1e-10, "<=");
    rep.add_verdict("involution_tangency_fd", inv.max_tangency_violation, 1e-6, "<=");
    rep.add_verdict("V_eq_minus_2XH", prop_viol, 1e-8, "<=");
    return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport shadow_experiment(const ConvexBody& body, const std::vector<double>& radii,
                                   int samples_per_radius, std::uint64_t seed,
                                   const SolverSettings& settings) {
    if (radii.size() < 2) throw ValidationError("shadow_experiment needs >= 2 radii");
    if (samples_per_radius < 1) throw ValidationError("shadow_experiment needs samples >= 1");

    ExperimentReport rep = make_report("shadow", body, seed);
    rep.params.emplace_back("samples", samples_per_radius);

    const auto constants = constants_estimate(body, 256, {}, settings);
    const double min_radius = *std::min_element(radii.begin(), radii.end());
    if (!(min_radius > constants.Delta_inv))
        throw ValidationError("shadow_experiment: min radius must exceed estimated 1/Delta = " +
                              std::to_string(constants.Delta_inv));

    const OuterBilliardMap map(body, settings);
    const HamiltonianAtInfinity H(body);
    const auto dirs = sphere_sample(body.dim(), samples_per_radius, seed);
    const double bound_c = constants.six_c_plus_c_tilde();

    Table per_radius{{"r", "E", "r_E", "bound"}, {}};
    Table samples_table{{"r", "dir_index", "err"}, {}};
    double bound_excess = -std::numeric_limits<double>::infinity();
    std::vector<double> e_of_r;
    for (double r : radii) {
        double worst = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const Vec x = r * dirs[i];
            try {
                const double err = (map.square(x) - flow(H, x, 1.0)).norm();
                worst = std::max(worst, err);
                bound_excess = std::max(bound_excess, err - bound_c / r);
                samples_table.rows.push_back({r, static_cast<double>(i), err});
            } catch (const Error& e) {
                rethrow_with_sample(e, r, i, x);
            }
        }
        e_of_r.push_back(worst);
        per_radius.rows.push_back({r, worst, r * worst, bound_c / r});
    }
    rep.tables.emplace_back("per_radius", std::move(per_radius));
    rep.tables.emplace_back("samples", std::move(samples_table));

    double re_min = std::numeric_limits<double>::infinity(), re_max = 0.0;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        re_min = std::min(re_min, radii[j] * e_of_r[j]);
        re_max = std::max(re_max, radii[j] * e_of_r[j]);
    }
    double worst_doubling = 0.0;
    for (std::size_t j = 0; j + 1 < radii.size(); ++j)
        if (std::abs(radii[j + 1] - 2.0 * radii[j]) < 1e-9 * radii[j])
            worst_doubling = std::max(worst_doubling, e_of_r[j + 1] / e_of_r[j]);

    rep.add_summary("six_C_plus_C_tilde", bound_c);
    rep.add_summary("Delta_inv", constants.Delta_inv);
    rep.add_verdict("rE_ratio_bounded", re_max / re_min, 4.0, "<=");
    rep.add_verdict("halving_per_doubling", worst_doubling, 0.75, "<=");
    rep.add_verdict("c_over_r_envelope", bound_excess, 0.0, "<=");
    return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport eps_decay_experiment(const ConvexBody& body, const std::vector<double>& radii,
                                      int samples_per_radius, std::uint64_t seed,
                                      const SolverSettings& settings) {
    if (radii.size() < 2) throw ValidationError("eps_decay_experiment needs >= 2 radii");
    if (samples_per_radius < 1) throw ValidationError("eps_decay_experiment needs samples >= 1");

    ExperimentReport rep = make_report("eps-decay", body, seed);
    rep.params.emplace_back("samples", samples_per_radius);

    const auto constants = constants_estimate(body, 256, {}, settings);
    const double min_radius = *std::min_element(radii.begin(), radii.end());
    if (!(min_radius > constants.Delta_inv))
        throw ValidationError("eps_decay_experiment: min radius must exceed estimated 1/Delta = " +
                              std::to_string(constants.Delta_inv));

    const OuterBilliardMap map(body, settings);
    const auto dirs = sphere_sample(body.dim(), samples_per_radius, seed);

    Table per_radius{{"r", "q1", "q2", "q3", "C_over_r"}, {}};
    std::vector<std::array<double, 3>> q_of_r;
    double q1_excess = -std::numeric_limits<double>::infinity();
    for (double r : radii) {
        std::array<double, 3> worst{0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const Vec x = r * dirs[i];
            try {
                const auto sol = map.reflect_minus(x);
                const Vec y = 2.0 * sol.m - x;
                const auto soly = map.reflect_minus(y);
                const double q1 = (n_minus(body, x) - sol.m).norm();
                const double q2 = (soly.m - n_minus(body, y)).norm();
                const double q3 = (n_minus(body, y) - n_plus(body, x)).norm();
                worst[0] = std::max(worst[0], q1);
                worst[1] = std::max(worst[1], q2);
                worst[2] = std::max(worst[2], q3);
                q1_excess = std::max(q1_excess, q1 - constants.C / r);
            } catch (const Error& e) {
                rethrow_with_sample(e, r, i, x);
            }
        }
        q_of_r.push_back(worst);
        per_radius.rows.push_back({r, worst[0], worst[1], worst[2], constants.C / r});
    }
    rep.tables.emplace_back("per_radius", std::move(per_radius));

    double worst_doubling = 0.0;
    for (std::size_t j = 0; j + 1 < radii.size(); ++j)
        if (std::abs(radii[j + 1] - 2.0 * radii[j]) < 1e-9 * radii[j])
            for (int q = 0; q < 3; ++q)
                worst_doubling = std::max(worst_doubling, q_of_r[j + 1][q] / q_of_r[j][q]);
    double worst_trend = 0.0;
    for (int q = 0; q < 3; ++q)
        worst_trend = std::max(worst_trend, q_of_r.back()[q] / q_of_r.front()[q]);

    rep.add_summary("C_est", constants.C);
    rep.add_verdict("halving_per_doubling", worst_doubling, 0.75, "<=");
    rep.add_verdict("monotone_trend", worst_trend, 1.0, "<=");
    rep.add_verdict("q1_below_C_over_r", q1_excess, 0.0, "<=");
    return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport escape_experiment(const ConvexBody& body, const Vec& x0, long k_steps,
                                   const SolverSettings& settings) {
    if (k_steps < 1) throw ValidationError("escape_experiment needs k_steps >= 1");
    ExperimentReport rep = make_report("escape", body, 0);
    rep.params.emplace_back("steps", static_cast<double>(k_steps));

    const auto constants = constants_estimate(body, 256, {}, settings);
    const HamiltonianAtInfinity H(body);
    const double h0 = H.value(x0);
    if (!(h0 >= constants.mu * constants.Delta_inv))
        throw ValidationError("escape_experiment: |x0|_H must be >= mu/Delta = " +
                              std::to_string(constants.mu * constants.Delta_inv));

    const OuterBilliardMap map(body, settings);
    const OrbitRecord record = map.orbit(x0, static_cast<int>(k_steps));

    const double h0sq = h0 * h0;
    double inc_max = 0.0, running_max = 0.0, c_fit = 0.0;
    const double x0_norm = x0.norm();
    Table track{{"k", "H2", "increment", "running_ratio"}, {}};
    const std::size_t stride =
        std::max<std::size_t>(1, record.points.size() / 1000);  // thin the JSON table
    for (std::size_t k = 1; k < record.points.size(); ++k) {
        const double hk = record.H_values[k];
        const double hprev = record.H_values[k - 1];
        const double inc = std::abs(hk * hk - hprev * hprev);
        inc_max = std::max(inc_max, inc);
        const double ratio = std::abs(hk * hk - h0sq) / static_cast<double>(k);
        running_max = std::max(running_max, ratio);
        c_fit = std::max(c_fit, (record.points[k].norm() - x0_norm) / std::sqrt(double(k)));
        if (k % stride == 0 || k + 1 == record.points.size())
            track.rows.push_back({static_cast<double>(k), hk * hk, inc, ratio});
    }
    rep.tables.emplace_back("track", std::move(track));
    rep.orbit = record;
    rep.truncated = !record.complete();
    if (rep.truncated)
        rep.note = "orbit truncated at step " + std::to_string(record.failure_index) + ": " +
                   record.failure_message;

    rep.add_summary("H0", h0);
    rep.add_summary("C_bar", constants.C_bar);
    rep.add_summary("sqrt_growth_c_fit", c_fit);  // descriptive, not asserted
    rep.add_summary("residual_max", record.residual_max);
    rep.add_verdict("per_step_increment", inc_max, constants.C_bar, "<=");
    rep.add_verdict("running_max_ratio", running_max, constants.C_bar, "<=");
    rep.add_verdict("orbit_complete", record.complete() ? 1.0 : 0.0, 1.0, ">=");
    return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport periodic_bound_experiment(const ConvexBody& body, int k, int starts,
                                           std::uint64_t seed, const SolverSettings& settings) {
    ExperimentReport rep = make_report("periodic", body, seed);
    rep.params.emplace_back("k", k);
    rep.params.emplace_back("starts", starts);

    const auto constants = constants_estimate(body, 256, {k}, settings);
    const double rho_k = constants.rho(k);
    const auto orbits = periodic_search(body, k, starts, seed, settings);

    Table table{{"orbit", "radius", "residual"}, {}};
    double worst_radius = 0.0;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        table.rows.push_back({static_cast<double>(i), orbits[i].radius, orbits[i].residual});
        worst_radius = std::max(worst_radius, orbits[i].radius);
    }
    rep.tables.emplace_back("orbits", std::move(table));

    rep.add_summary("rho_k", rho_k);
    rep.add_summary("found", static_cast<double>(orbits.size()));
    rep.add_verdict("orbits_inside_rho", worst_radius, rho_k, "<=");
    return rep;
}

// ---------------------------------------------------------------------------

SquareBoundReport square_bound_check(const std::vector<std::pair<Vec, Vec>>& pairs, double C,
                                     double Lambda,
                                     const std::function<double(const Vec&)>& norm) {
    if (!(C > 0.0) || !(Lambda > 0.0))
        throw ValidationError("square_bound_check needs C > 0 and Lambda > 0");
    auto nrm = norm ? norm : [](const Vec& v) { return v.norm(); };

    SquareBoundReport rep;
    rep.bound = 2.0 * C + 3.0 * C * C * Lambda * Lambda;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [a, b] = pairs[i];
        const double nb = nrm(b);
        // hypothesis gate: |b| >= 1/Lambda and |a - b| <= C/|b|
        if (!(nb >= 1.0 / Lambda) || !(nrm(a - b) <= C / nb)) {
            ++rep.skipped;
            rep.skipped_indices.push_back(static_cast<int>(i));
            continue;
        }
        ++rep.checked;
        const double na = nrm(a);
        rep.max_lhs = std::max(rep.max_lhs, std::abs(na * na - nb * nb));
    }
    rep.pass = rep.max_lhs <= rep.bound;
    return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport demo_constant_width(double eps, double radius, int steps,
                                     const SolverSettings& settings) {
    const auto spec = BodySpec::constant_width_spec(eps);
    spec.validate();
    const ConvexBody body = make_body(spec);
    ExperimentReport rep = make_report("demo", body, 0);
    rep.params.emplace_back("eps", eps);
    rep.params.emplace_back("radius", radius);
    rep.params.emplace_back("steps", steps);

    const OuterBilliardMap map(body, settings);
    Vec x0(2);
    x0 << radius, 0.0;
    const OrbitRecord record = map.orbit(x0, steps);
    rep.orbit = record;
    rep.truncated = !record.complete();

    double r_min = std::numeric_limits<double>::infinity(), r_max = 0.0;
    for (const Vec& p : record.points) {
        r_min = std::min(r_min, p.norm());
        r_max = std::max(r_max, p.norm());
    }
    // angular increment of successive T^2 points, wrapped
    double inc_min = std::numeric_limits<double>::infinity(), inc_max = 0.0, inc_sum = 0.0;
    int inc_n = 0;
    for (std::size_t i = 1; i < record.points.size(); ++i) {
        const double a0 = std::atan2(record.points[i - 1][1], record.points[i - 1][0]);
        const double a1 = std::atan2(record.points[i][1], record.points[i][0]);
        double d = a1 - a0;
        while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
        inc_min = std::min(inc_min, std::abs(d));
        inc_max = std::max(inc_max, std::abs(d));
        inc_sum += std::abs(d);
        ++inc_n;
    }
    const double inc_mean = inc_sum / std::max(inc_n, 1);

    rep.add_summary("radius_min", r_min);
    rep.add_summary("radius_max", r_max);
    rep.add_summary("angular_increment_mean", inc_mean);
    rep.add_summary("angular_speed_expect", 4.0 / radius);  // |V| = 4 on the symmetrized circle
    rep.add_verdict("radius_drift", (r_max - r_min) / radius, 0.01, "<=");
    rep.add_verdict("uniform_angular_increment",
                    std::max(inc_max - inc_mean, inc_mean - inc_min) / inc_mean, 0.02, "<=");
    rep.add_verdict("orbit_complete", record.complete() ? 1.0 : 0.0, 1.0, ">=");
    return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport orbit_experiment(const ConvexBody& body, const Vec& x0, int steps,
                                  const SolverSettings& settings) {
    ExperimentReport rep = make_report("orbit", body, 0);
    rep.params.emplace_back("steps", steps);

    const OuterBilliardMap map(body, settings);
    const OrbitRecord record = map.orbit(x0, steps);
    rep.orbit = record;
    rep.truncated = !record.complete();
    if (rep.truncated)
        rep.note = "orbit truncated at step " + std::to_string(record.failure_index) + ": " +
                   record.failure_message;

    double h_min = std::numeric_limits<double>::infinity(), h_max = 0.0;
    for (double h : record.H_values) {
        h_min = std::min(h_min, h);
        h_max = std::max(h_max, h);
    }
    rep.add_summary("H_min", h_min);
    rep.add_summary("H_max", h_max);
    rep.add_summary("residual_max", record.residual_max);
    rep.add_verdict("orbit_complete", record.complete() ? 1.0 : 0.0, 1.0, ">=");
    // sanity floor independent of the configured tolerance: a sloppy solver
    // setting must fail loudly, not produce a quietly wrong orbit
    rep.add_verdict("solver_residual", record.residual_max, 1e-8, "<=");
    return rep;
}

ExperimentReport constants_experiment(const ConvexBody& body, int samples,
                                      const std::vector<int>& k_list,
                                      const SolverSettings& settings) {
    ExperimentReport rep = make_report("constants", body, 0);
    rep.params.emplace_back("samples", samples);

    const auto c = constants_estimate(body, samples, k_list, settings);
    rep.add_summary("C1", c.C1);
    rep.add_summary("ell", c.ell);
    rep.add_summary("C", c.C);
    rep.add_summary("delta_inv", c.delta_inv);
    rep.add_summary("C_tilde", c.C_tilde);
    rep.add_summary("delta_tilde_inv", c.delta_tilde_inv);
    rep.add_summary("m", c.m);
    rep.add_summary("eta", c.eta);
    rep.add_summary("mu", c.mu);
    rep.add_summary("Delta_inv", c.Delta_inv);
    rep.add_summary("C_bar", c.C_bar);

    Table alpha{{"r", "alpha_max"}, {}};
    for (std::size_t i = 0; i < c.alpha_radii.size(); ++i)
        alpha.rows.push_back({c.alpha_radii[i], c.alpha_max[i]});
    rep.tables.emplace_back("alpha_grid", std::move(alpha));

    Table taylor{{"r", "r_times_residual"}, {}};
    for (std::size_t i = 0; i < c.taylor_radii.size(); ++i)
        taylor.rows.push_back({c.taylor_radii[i], c.taylor_scaled_residual[i]});
    rep.tables.emplace_back("taylor_grid", std::move(taylor));

    Table rho{{"k", "rho"}, {}};
    for (const auto& [k, r] : c.rho_table) rho.rows.push_back({static_cast<double>(k), r});
    rep.tables.emplace_back("rho", std::move(rho));

    // exact arithmetic identities over the stored entries
    rep.add_verdict("c_bar_identity", std::abs(c.C_bar - c.c_bar_formula()), 0.0, "<=");
    rep.add_verdict("eta_cap", c.eta, 0.5, "<=");
    return rep;
}

}  // namespace osb
