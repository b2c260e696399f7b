#pragma once

// Experiment configs: parsing, up-front validation, and the computations
// behind each CLI experiment.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "params.hpp"

namespace ergolab::cli {

struct ExperimentConfig {
    std::string experiment;
    std::string system;
    json parameters = json::object();
    std::string output;

    json to_json() const;
};

const std::vector<std::string>& experiment_names();
bool experiment_uses_seed(std::string_view experiment);

/// Top-level shape only; unknown top-level keys are rejected.
ExperimentConfig parse_config(const json& doc);

struct Artifact {
    std::string suffix;  // ".csv", ".svg"
    std::string content;
};

struct RunResult {
    std::vector<Artifact> artifacts;
    json summary = json::object();
    bool check_passed = true;
};

struct PreparedRun {
    json resolved;  // parameters with defaults filled in
    std::function<RunResult()> compute;
};

/// Validates every parameter and builds the system; nothing is integrated or
/// sampled until compute() is called.
PreparedRun prepare(const ExperimentConfig& config);

}  // namespace ergolab::cli
