#pragma once

// Textual key=value run configuration shared by the CLI subcommands.
// Unknown keys are rejected; values mirror EquationParams, Grid, EvolveConfig,
// the Gaussian data and solver knobs.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghartree/eqparams.hpp"
#include "ghartree/evolve.hpp"
#include "ghartree/grid.hpp"
#include "ghartree/groundstate.hpp"

namespace ghartree {

struct RunConfig {
    EquationParams params;
    int grid_n = 128;
    double grid_L = 12.0;
    double beta = 1.0;
    double gamma = 1.0;
    EvolveConfig evolve;
    PetviashviliOptions petviashvili;
    SingularRule rule = SingularRule::LatticeCorrected;
    double sweep_beta_min = 0.2;
    double sweep_beta_max = 2.0;
    int sweep_steps = 64;
    bool finite_variance = true;
    bool radial = true;

    /// Canonical "key=value\n" text (sorted keys); hashed into output headers.
    std::string canonical_text() const;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Applies "key=value" entries onto defaults. Throws ConfigError on unknown
/// keys or unparsable values.
RunConfig parse_config(const std::vector<std::string>& entries);

/// Reads a config file (one key=value per line, '#' comments) and merges
/// overrides on top.
std::vector<std::string> read_config_file(const std::string& path);

} // namespace ghartree
