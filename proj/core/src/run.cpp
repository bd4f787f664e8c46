#include "osb/run.hpp"

#include <filesystem>
#include <iostream>

#include "osb/errors.hpp"
#include "osb/writers.hpp"

namespace osb {

namespace {

Vec start_point(const ConvexBody& body, const ExperimentParams& params, std::uint64_t seed) {
    if (params.x0) {
        if (static_cast<int>(params.x0->size()) != body.dim())
            throw ValidationError("experiment.x0 dimension does not match the body");
        Vec x(body.dim());
        for (int i = 0; i < body.dim(); ++i) x[i] = (*params.x0)[i];
        return x;
    }
    GaussianRng rng(seed ^ 0x0facadeULL);
    return params.radius * unit_vector(rng, body.dim());
}

ExperimentReport dispatch(const RunConfig& config) {
    const auto& p = config.experiment;
    if (p.name == "demo") {
        if (config.body.kind != BodySpec::Kind::constant_width_2d)
            throw ValidationError("demo requires a constant_width_2d body");
        return demo_constant_width(config.body.eps, p.radius, static_cast<int>(p.steps),
                                   config.solver);
    }
    const ConvexBody body = make_body(config.body);
    if (p.name == "orbit")
        return orbit_experiment(body, start_point(body, p, config.seed),
                                static_cast<int>(p.steps), config.solver);
    if (p.name == "shadow")
        return shadow_experiment(body, p.radii, p.samples, config.seed, config.solver);
    if (p.name == "eps-decay")
        return eps_decay_experiment(body, p.radii, p.samples, config.seed, config.solver);
    if (p.name == "escape")
        return escape_experiment(body, start_point(body, p, config.seed), p.steps, config.solver);
    if (p.name == "periodic")
        return periodic_bound_experiment(body, p.k, p.starts, config.seed, config.solver);
    if (p.name == "duality-check") return duality_suite(body, p.samples, config.seed);
    if (p.name == "constants")
        return constants_experiment(body, p.samples, p.k_list, config.solver);
    throw ConfigError("unknown experiment '" + p.name + "'", "experiment.name");
}

}  // namespace

int run(const RunConfig& config) {
    try {
        ExperimentReport report = dispatch(config);
        report.seed = config.seed;

        const std::filesystem::path dir(config.output.dir);
        if (config.output.json)
            write_report_json(report, (dir / "report.json").string(), &config);
        if (config.output.csv && report.orbit)
            write_orbit_csv(*report.orbit, (dir / "orbit.csv").string());
        if (config.output.svg && report.orbit) {
            const ConvexBody body = make_body(config.body);
            write_scatter_svg(report.orbit->points, body,
                              report.experiment + " " + body.description(),
                              (dir / "scatter.svg").string());
        }

        if (!config.quiet) {
            for (const auto& v : report.verdicts)
                std::cout << (v.pass ? "PASS " : "FAIL ") << report.experiment << "/" << v.name
                          << ": " << v.value << " " << v.relation << " " << v.threshold << "\n";
            for (const auto& [k, v] : report.summary)
                std::cout << "  " << k << " = " << v << "\n";
        }
        return report.all_pass() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace osb
