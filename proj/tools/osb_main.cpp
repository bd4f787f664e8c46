// osb: outer symplectic billiard experiments.
//
// One subcommand per experiment; --config supplies a JSON run description,
// individual flags override it (flags win). Exit code 0 when every verdict
// passes, 1 on a failed verdict, 2 on config/solver errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "osb/errors.hpp"
#include "osb/run.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw osb::IoError("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"outer symplectic billiards: maps, duality checks, and experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string body_json;
    std::string out_dir;
    std::int64_t seed = -1;
    bool svg = false;
    bool quiet = false;

    const std::vector<std::string> experiments = {"orbit",    "shadow",        "eps-decay",
                                                  "escape",   "periodic",      "duality-check",
                                                  "constants", "demo"};
    for (const auto& name : experiments) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--body", body_json, "inline body JSON, overrides the config");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "random seed, overrides the config");
        sub->add_flag("--svg", svg, "also write scatter.svg");
        sub->add_flag("--quiet", quiet, "suppress verdict lines on stdout");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string subcommand = app.get_subcommands().front()->get_name();

    try {
        osb::RunConfig config;
        if (!config_path.empty()) {
            config = osb::parse_config(read_file(config_path));
        } else {
            if (body_json.empty()) {
                std::cerr << "error: either --config or --body is required\n";
                return 2;
            }
            // minimal synthetic document so defaults materialize through the
            // same strict-parse path
            config = osb::parse_config(R"({"body":{"kind":"ellipsoid","semi_axes":[1,1]},)"
                                       R"("experiment":{"name":")" +
                                       subcommand + R"("}})");
        }

        osb::CliOverrides overrides;
        overrides.experiment_name = subcommand;
        if (!body_json.empty()) overrides.body_json = body_json;
        if (!out_dir.empty()) overrides.out_dir = out_dir;
        if (seed >= 0) overrides.seed = static_cast<std::uint64_t>(seed);
        if (svg) overrides.svg = true;
        if (quiet) overrides.quiet = true;
        osb::apply_overrides(config, overrides);

        return osb::run(config);
    } catch (const osb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
