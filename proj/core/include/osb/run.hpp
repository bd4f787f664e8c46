#pragma once

// Dispatch a validated RunConfig to its experiment and write the outputs.
// Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 config or
// solver error (diagnostics on stderr).

#include "osb/config.hpp"

namespace osb {

int run(const RunConfig& config);

}  // namespace osb
