#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "emit.hpp"
#include "ergolab/errors.hpp"
#include "experiments.hpp"
#include "registry.hpp"

namespace ergolab::cli {

namespace {

int diagnose(std::ostream& err, ExitCode code, std::string_view kind, const std::string& message) {
    const json d = {{"status", "error"}, {"exit_code", static_cast<int>(code)}, {"kind", kind}, {"message", message}};
    err << d.dump() << '\n';
    return code;
}

struct RunOptions {
    std::string experiment;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    bool check = false;
};

json load_config_document(const RunOptions& opt) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) throw ValidationError("cannot read config file " + opt.config_path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config is not valid JSON: " + std::string(e.what()));
    }
    // A run manifest can be fed back in; its echoed config is the input.
    if (doc.is_object() && doc.contains("artifact_version") && doc.contains("config")) doc = doc["config"];
    if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");

    if (doc.contains("experiment") && doc["experiment"] != opt.experiment)
        throw ValidationError("config is for experiment " + doc["experiment"].dump() + ", not \"" +
                              opt.experiment + "\"");
    doc["experiment"] = opt.experiment;
    if (opt.seed) {
        if (!experiment_uses_seed(opt.experiment))
            throw ValidationError("--seed has no effect on " + opt.experiment);
        doc["parameters"]["seed"] = *opt.seed;
    }
    if (opt.output) doc["output"] = *opt.output;
    return doc;
}

int run_experiment(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    PreparedRun prepared;
    try {
        cfg = parse_config(load_config_document(opt));
        prepared = prepare(cfg);
    } catch (const ValidationError& e) {
        return diagnose(err, exit_validation, "validation", e.what());
    }

    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    try {
        result = prepared.compute();
    } catch (const NumericalError& e) {
        return diagnose(err, exit_numerical, "numerical", e.what());
    } catch (const ValidationError& e) {
        // Preconditions only detectable mid-run (e.g. a turning point).
        return diagnose(err, exit_validation, "validation", e.what());
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json outputs = json::array();
    std::vector<std::string> written;
    try {
        for (const auto& a : result.artifacts) {
            const std::string path = cfg.output + a.suffix;
            write_atomic(path, a.content);
            outputs.push_back({{"file", path}, {"bytes", a.content.size()}, {"sha256", sha256_hex(a.content)}});
            written.push_back(path);
        }
        const json manifest = {{"artifact", "ergolab"},
                               {"artifact_version", kArtifactVersion},
                               {"config", cfg.to_json()},
                               {"resolved_parameters", prepared.resolved},
                               {"wall_time_seconds", wall},
                               {"outputs", outputs},
                               {"summary", result.summary},
                               {"check", {{"requested", opt.check}, {"passed", result.check_passed}}}};
        const std::string manifest_path = cfg.output + ".manifest.json";
        write_atomic(manifest_path, manifest.dump(2) + "\n");
        written.push_back(manifest_path);
    } catch (const std::exception& e) {
        return diagnose(err, exit_io, "io", e.what());
    }

    out << cfg.experiment << " on " << cfg.system << ": wrote";
    for (const auto& w : written) out << ' ' << w;
    out << '\n';
    if (opt.check) {
        out << "check: " << (result.check_passed ? "passed" : "failed") << '\n';
        if (!result.check_passed)
            return diagnose(err, exit_check_failed, "check_failed",
                            "acceptance threshold not met: " + result.summary.dump());
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ergolab: measure, flow and recurrence experiments"};
    app.set_version_flag("--version", kArtifactVersion);
    app.require_subcommand(1);

    RunOptions opt;
    for (const auto& name : experiment_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", opt.config_path, "experiment config (JSON) or a run manifest")->required();
        sub->add_option("--seed", opt.seed, "override parameters.seed");
        sub->add_option("--output", opt.output, "override the output path stem");
        sub->add_flag("--check", opt.check, "exit 4 when the experiment's acceptance threshold is not met");
        sub->callback([&opt, name] { opt.experiment = name; });
    }
    bool as_json = false;
    CLI::App* list = app.add_subcommand("list-systems", "list built-in systems and their parameters");
    list->add_flag("--json", as_json, "machine-readable schema");

    std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_rest.begin(), argv_rest.end());  // CLI11 consumes from the back
    try {
        app.parse(argv_rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << kArtifactVersion << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        return diagnose(err, exit_validation, "usage", e.what());
    }

    if (list->parsed()) {
        if (as_json) out << registry_json().dump(2) << '\n';
        else out << registry_table();
        return exit_ok;
    }
    return run_experiment(opt, out, err);
}

}  // namespace ergolab::cli
