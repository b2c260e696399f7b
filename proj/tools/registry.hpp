#pragma once

// Built-in systems the CLI can run experiments on.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergolab/separable_hamiltonian.hpp"
#include "ergolab/vector_field.hpp"
#include "params.hpp"

namespace ergolab::cli {

enum class SystemKind { hamiltonian, flow, map };

std::string_view to_string(SystemKind k);

struct ParamInfo {
    std::string name;
    std::string type;
    json default_value;
    std::string constraint;
};

struct SystemInfo {
    std::string key;
    SystemKind kind;
    std::string description;
    std::vector<ParamInfo> parameters;
    std::vector<std::string> experiments;

    bool supports(std::string_view experiment) const;
};

const std::vector<SystemInfo>& system_registry();

/// Throws ValidationError for unknown keys.
const SystemInfo& find_system(std::string_view key);

struct BuiltSystem {
    const SystemInfo* info = nullptr;
    std::optional<SeparableHamiltonian> hamiltonian;  // hamiltonian kind
    VectorField field;                                // hamiltonian and flow kinds
    std::optional<PointMap> map;                      // map kind
    double mass = 1.0;                                // T = p^2 / 2m for the 1-dof systems
    double g_over_L = 0.0;                            // pendulum only
    double omega = 0.0;                               // harmonic only
    double gamma = 0.0;                               // damped only
    std::vector<double> coefficients;                 // custom-polynomial only
};

/// Reads and validates the system's own parameters from `params`.
BuiltSystem build_system(const SystemInfo& info, Params& params);

/// Text table for `list-systems`.
std::string registry_table();
/// Machine-readable schema for `list-systems --json`.
json registry_json();

}  // namespace ergolab::cli
