#pragma once

// Quantitative verification harness: constants estimation, shadowing decay,
// escape-rate bound, periodic-orbit radius bound, and the figure demos.
// Every experiment is a pure function of (body/config, seed): reports are
// reproducible byte for byte.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osb/dynamics.hpp"

namespace osb {

/// Numerically estimated constants controlling the shadowing error, the
/// escape rate, and the periodic-orbit radius bound.
/// All sampled estimators use fixed internal seeds and grids expressed in
/// units of the measured diameter, so a scaled body c*M reproduces the
/// scalings C1 -> c C1, ell -> ell/c, m -> c m, rho(k) -> c rho(k).
struct ConstantsReport {
    double C1 = 0.0;              // diameter of M
    double ell = 0.0;             // Gauss-map bi-Lipschitz lower constant (sampled min)
    double C = 0.0;               // 6 C1 / ell
    double delta_inv = 0.0;       // 1/delta: max(2 C1, radius with tangency angles <= pi/2)
    double C_tilde = 0.0;         // flow Taylor constant, measured
    double delta_tilde_inv = 0.0; // 1/delta~: radius where r*|phi_1 - x - V| stops growing
    double m = 0.0;               // min |V| over the sphere
    double eta = 0.0;             // modulus-of-continuity radius on the shell, <= 1/2
    double mu = 0.0;              // norm equivalence: mu^{-1} |x| <= |x|_H <= mu |x|
    double Delta_inv = 0.0;       // max(1/delta, 1/delta~)
    double C_bar = 0.0;           // 2 mu^2 (6C+C~) + 3 mu^2 (6C+C~)^2 Delta^2

    double six_c_plus_c_tilde() const { return 6.0 * C + C_tilde; }
    double c_bar_formula() const {
        const double s = six_c_plus_c_tilde();
        return 2.0 * mu * mu * s + 3.0 * mu * mu * s * s / (Delta_inv * Delta_inv);
    }
    /// rho(k) = max{1/delta + 2(k-1)C1, 2(k-1)C1/eta, 24C/m}.
    double rho(int k) const;

    // measurement grids, echoed into reports
    std::vector<double> alpha_radii, alpha_max;
    std::vector<double> taylor_radii, taylor_scaled_residual;
    std::vector<std::pair<int, double>> rho_table;
};

ConstantsReport constants_estimate(const ConvexBody& body, int samples,
                                   const std::vector<int>& k_list = {},
                                   const SolverSettings& settings = {});

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "=="
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
    std::string experiment;
    std::string body_description;
    std::optional<BodySpec> body;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> params;
    std::vector<std::pair<std::string, Table>> tables;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<Verdict> verdicts;
    bool truncated = false;
    std::string note;
    std::optional<OrbitRecord> orbit;  // orbit-producing experiments keep the record

    bool all_pass() const;
    void add_verdict(std::string name, double value, double threshold, std::string relation);
    void add_summary(std::string name, double value) { summary.emplace_back(std::move(name), value); }
    const Table* find_table(const std::string& name) const;
};

/// Section-2 identity suite: Reeb normalization, symmetrization identity,
/// nbar antisymmetry, the polar involution, and the V = -2 X_H cross-check.
ExperimentReport duality_suite(const ConvexBody& body, int samples, std::uint64_t seed);

/// E(r) = max_dirs |T^2(x) - phi_1(x)| at |x| = r; verdicts on r*E(r)
/// flatness, per-doubling decay, and the proven (6C+C~)/r bound.
ExperimentReport shadow_experiment(const ConvexBody& body, const std::vector<double>& radii,
                                   int samples_per_radius, std::uint64_t seed,
                                   const SolverSettings& settings = {});

/// The three tangency-gap quantities |n_-(x) - m_-(x)|, |m_-(y) - n_-(y)|,
/// |n_-(y) - n_+(x)| measured per radius, with 1/r-decay verdicts.
ExperimentReport eps_decay_experiment(const ConvexBody& body, const std::vector<double>& radii,
                                      int samples_per_radius, std::uint64_t seed,
                                      const SolverSettings& settings = {});

/// Orbit of T^2 tracking |x|_H^2 increments against the proven per-step
/// bound C_bar; the sqrt(k) growth fit is reported, not asserted.
ExperimentReport escape_experiment(const ConvexBody& body, const Vec& x0, long k_steps,
                                   const SolverSettings& settings = {});

/// Multistart k-periodic orbit search; every found orbit is checked against
/// the radius bound rho(k) outside of which no k-periodic orbits exist.
ExperimentReport periodic_bound_experiment(const ConvexBody& body, int k, int starts,
                                           std::uint64_t seed,
                                           const SolverSettings& settings = {});

struct SquareBoundReport {
    int checked = 0;
    int skipped = 0;
    std::vector<int> skipped_indices;
    double max_lhs = 0.0;
    double bound = 0.0;
    bool pass = true;
};

/// ||a|^2 - |b|^2| <= 2C + 3C^2 Lambda^2 for pairs satisfying the hypothesis
/// |a - b| <= C/|b|, |b| >= 1/Lambda (non-qualifying pairs are skipped and
/// flagged). `norm` defaults to Euclidean when empty.
SquareBoundReport square_bound_check(const std::vector<std::pair<Vec, Vec>>& pairs, double C,
                                     double Lambda,
                                     const std::function<double(const Vec&)>& norm = {});

/// Demo: uniform circular motion at infinity about a smooth constant-width
/// body (radius drift < 1%, angular increment constant to < 2%).
ExperimentReport demo_constant_width(double eps, double radius, int steps,
                                     const SolverSettings& settings = {});

/// Plain orbit run wrapped as a report (CLI `orbit` subcommand).
ExperimentReport orbit_experiment(const ConvexBody& body, const Vec& x0, int steps,
                                  const SolverSettings& settings = {});

/// Constants estimation wrapped as a report (CLI `constants` subcommand).
ExperimentReport constants_experiment(const ConvexBody& body, int samples,
                                      const std::vector<int>& k_list,
                                      const SolverSettings& settings = {});

}  // namespace osb
