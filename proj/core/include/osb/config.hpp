#pragma once

// Strict JSON configuration schema for experiment runs. Unknown fields are
// rejected, defaults are materialized on parse, and the normalized echo
// round-trips to an identical document.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osb/dynamics.hpp"
#include "osb/experiments.hpp"

namespace osb {

struct OutputSettings {
    std::string dir = "out";
    bool csv = true;
    bool json = true;
    bool svg = false;
};

struct ExperimentParams {
    std::string name;  // orbit | shadow | eps-decay | escape | periodic |
                       // duality-check | constants | demo
    std::vector<double> radii = {10, 20, 40, 80, 160};
    int samples = 64;
    long steps = 1000;
    std::optional<std::vector<double>> x0;  // explicit start point
    double radius = 50.0;                   // start radius when x0 absent
    int k = 3;
    int starts = 200;
    std::vector<int> k_list = {2, 3, 4, 5, 10};
};

struct RunConfig {
    BodySpec body;
    ExperimentParams experiment;
    std::uint64_t seed = 0;
    SolverSettings solver;
    OutputSettings output;
    bool quiet = false;
};

/// Parse and validate a JSON document against the strict schema.
/// Schema violations -> ConfigError (naming the field); body/experiment
/// parameters outside their validity ranges -> ValidationError.
RunConfig parse_config(const std::string& json_text);

/// Normalized echo with all defaults materialized; parse(normalize(c)) == c.
std::string normalize_config(const RunConfig& config);

/// Parse an inline body JSON object ({"kind": ...}).
BodySpec parse_body_json(const std::string& json_text);

/// Flag overrides (flags win over the config file).
struct CliOverrides {
    std::optional<std::string> experiment_name;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<bool> svg;
    std::optional<std::string> body_json;
    std::optional<bool> quiet;
};
void apply_overrides(RunConfig& config, const CliOverrides& overrides);

}  // namespace osb
