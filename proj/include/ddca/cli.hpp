#pragma once

#include <string_view>

#include "ddca/engine.hpp"

namespace ddca::cli {

/// Entry point of the `ddca` tool: subcommands detect, generate and validate.
/// Returns the process exit code; diagnostics go to stderr.
int run(int argc, const char* const* argv);

/// Parses `arithmetic:<x1>,<step>` or `gaussian:<mu>,<sigma>`. Throws ConfigError.
LifespanDistribution parse_lifespan(std::string_view text, std::uint64_t seed);

}  // namespace ddca::cli
