#pragma once

#include <string>

#include "forge/ends.hpp"

namespace forge {

// A scenario is a key = value text file describing one surface end:
//
//   id = maxface-std
//   class = maxface
//   g = z/2
//   omega = 1/z^2
//   F1 = ...
//   r0 = 0.5
//   rays = 8
//
// '#' starts a comment. Unknown keys raise ConfigError with the line number.
struct Scenario {
    std::string id;
    SurfaceModel model;
    EndConfig cfg;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Applies non-zero/non-negative command line overrides on top of the file.
struct ScenarioOverrides {
    int rays = 0;
    double r0 = 0.0;
    int grid = 0;
    double tol = 0.0;
};

void apply_overrides(Scenario& sc, const ScenarioOverrides& ov);

}  // namespace forge
