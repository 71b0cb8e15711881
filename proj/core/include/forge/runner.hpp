#pragma once

#include <string>

#include "forge/scenario.hpp"

namespace forge {

struct RunOutcome {
    EndReport report;
    ConsistencyResult consistency;
    std::string json;  // full machine-readable report
    std::string csv;   // partial length table: ray_angle, epsilon, partial_length
    std::string summary;  // short human-readable digest
};

RunOutcome run_scenario(const Scenario& sc);

// Writes a triangulated OBJ mesh of the surface. Supported for the affine,
// maxface and flat-s3 classes (the metric-only classes carry no immersion).
void write_obj(const Scenario& sc, const std::string& path);

// Built-in presets: "s3-counterexample", "affine-claim", "parabolic-end",
// "completeness-lemma-demo". Throws ConfigError on unknown ids.
RunOutcome reproduce(const std::string& id);

// Maps the library error taxonomy onto process exit codes:
// 2 config, 3 model validation, 4 numeric trouble.
int exit_code_for(const std::exception& e);

}  // namespace forge
