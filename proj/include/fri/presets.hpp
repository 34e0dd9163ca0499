// SPDX-License-Identifier: MIT
//
// Ready-made experiment configurations: the three pulse shapes at desk scale
// (41 coefficients) and at full scale (401 coefficients), the pulse-spacing
// sweep, and the periodic vs semi-periodic comparison.  All random-looking
// parameter values are frozen literals so every run is reproducible.

#pragma once

#include "fri/simlab.hpp"

#include <string>
#include <vector>

namespace fri {

std::vector<std::string> preset_names();

/// ConfigError for unknown names.
ExperimentConfig preset_config(const std::string& name);

}  // namespace fri
