#include "registry.hpp"

#include <algorithm>

#include "ergolab/errors.hpp"
#include "ergolab/hamiltonian.hpp"
#include "ergolab/systems.hpp"

namespace ergolab::cli {

std::string_view to_string(SystemKind k) {
    switch (k) {
        case SystemKind::hamiltonian: return "hamiltonian";
        case SystemKind::flow: return "flow";
        case SystemKind::map: return "map";
    }
    return "?";
}

bool SystemInfo::supports(std::string_view experiment) const {
    return std::find(experiments.begin(), experiments.end(), experiment) != experiments.end();
}

const std::vector<SystemInfo>& system_registry() {
    static const std::vector<SystemInfo> registry{
        {"harmonic",
         SystemKind::hamiltonian,
         "H = p^2/2m + m omega^2 q^2/2",
         {{"m", "number", 1.0, "> 0"}, {"omega", "number", 1.0, "> 0"}},
         {"portrait", "simulate", "liouville", "recurrence", "volume"}},
        {"pendulum",
         SystemKind::hamiltonian,
         "H = p^2/2 + (g/L)(1 - cos theta), theta wrapped to (-pi, pi]",
         {{"g_over_L", "number", 1.0, "> 0"}},
         {"portrait", "simulate", "liouville", "recurrence", "volume"}},
        {"damped",
         SystemKind::flow,
         "(q, p)' = (p, -q - gamma p), divergence -gamma",
         {{"gamma", "number", 0.5, ">= 0"}},
         {"simulate", "liouville", "recurrence"}},
        {"rotation",
         SystemKind::map,
         "x -> x + alpha mod 1 on [0, 1)",
         {{"alpha", "number", kGoldenRotation, "finite"}},
         {"recurrence", "invariance"}},
        {"doubling", SystemKind::map, "x -> 2x mod 1 on [0, 1)", {}, {"recurrence", "invariance"}},
        {"contraction",
         SystemKind::map,
         "x -> x/2 on [0, 1), not measure preserving",
         {},
         {"recurrence", "invariance"}},
        {"custom-polynomial",
         SystemKind::hamiltonian,
         "H = p^2/2m + sum_k c_k q^k, coefficients = [c_1, c_2, ...]",
         {{"coefficients", "array of numbers", json::array({0.0, 0.5}), "non-empty, finite"},
          {"m", "number", 1.0, "> 0"}},
         {"portrait", "simulate", "liouville", "recurrence", "volume"}},
    };
    return registry;
}

const SystemInfo& find_system(std::string_view key) {
    for (const auto& s : system_registry())
        if (s.key == key) return s;
    throw ValidationError("unknown system \"" + std::string(key) + "\" (see list-systems)");
}

BuiltSystem build_system(const SystemInfo& info, Params& params) {
    BuiltSystem out;
    out.info = &info;
    const auto set_hamiltonian = [&](SeparableHamiltonian h) {
        out.field = hamiltonian_vector_field(h);
        out.hamiltonian = std::move(h);
    };
    if (info.key == "harmonic") {
        out.mass = params.positive("m", 1.0);
        out.omega = params.positive("omega", 1.0);
        set_hamiltonian(harmonic_oscillator(out.mass, out.omega));
    } else if (info.key == "pendulum") {
        out.g_over_L = params.positive("g_over_L", 1.0);
        set_hamiltonian(pendulum(out.g_over_L));
    } else if (info.key == "damped") {
        out.gamma = params.non_negative("gamma", 0.5);
        out.field = damped_oscillator(out.gamma);
    } else if (info.key == "rotation") {
        out.map = circle_rotation(params.real("alpha", kGoldenRotation));
    } else if (info.key == "doubling") {
        out.map = doubling_map();
    } else if (info.key == "contraction") {
        out.map = contraction_map();
    } else if (info.key == "custom-polynomial") {
        out.coefficients = params.reals("coefficients", {0.0, 0.5});
        out.mass = params.positive("m", 1.0);
        set_hamiltonian(polynomial_hamiltonian(out.coefficients, out.mass));
    } else {
        throw ValidationError("system \"" + info.key + "\" has no builder");
    }
    return out;
}

std::string registry_table() {
    std::string out = "system             kind         parameters (defaults)                experiments\n";
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.resize(w, ' ');
        return s + ' ';
    };
    for (const auto& s : system_registry()) {
        std::string ps;
        for (const auto& p : s.parameters) {
            if (!ps.empty()) ps += ", ";
            ps += p.name + "=" + p.default_value.dump();
        }
        if (ps.empty()) ps = "-";
        std::string ex;
        for (const auto& e : s.experiments) {
            if (!ex.empty()) ex += ",";
            ex += e;
        }
        out += pad(s.key, 18) + pad(std::string(to_string(s.kind)), 12) + pad(ps, 36) + ex + "\n";
    }
    return out;
}

json registry_json() {
    json systems = json::array();
    for (const auto& s : system_registry()) {
        json params = json::array();
        for (const auto& p : s.parameters)
            params.push_back({{"name", p.name},
                              {"type", p.type},
                              {"default", p.default_value},
                              {"constraint", p.constraint}});
        systems.push_back({{"key", s.key},
                           {"kind", to_string(s.kind)},
                           {"description", s.description},
                           {"parameters", params},
                           {"experiments", s.experiments}});
    }
    return {{"systems", systems}};
}

}  // namespace ergolab::cli
