#pragma once

// Typed, validated access to the "parameters" object of an experiment config.
// Every read is recorded; finish() rejects keys nobody asked for.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace ergolab::cli {

using json = nlohmann::ordered_json;

class Params {
public:
    Params(json object, std::string context);

    bool has(const std::string& key) const;

    /// Finite number; `fallback` when absent.
    double real(const std::string& key, double fallback);
    /// Non-negative integer (integral-valued floats such as 1e6 accepted).
    std::uint64_t integer(const std::string& key, std::uint64_t fallback);
    /// Non-empty array of finite numbers.
    std::vector<double> reals(const std::string& key, std::vector<double> fallback);
    std::string text(const std::string& key, std::string fallback);

    // Constraint checks that name the key in the diagnostic.
    double positive(const std::string& key, double fallback);
    double non_negative(const std::string& key, double fallback);
    std::uint64_t positive_integer(const std::string& key, std::uint64_t fallback);

    /// Throws ValidationError naming the key and the context.
    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

    /// Rejects unread keys.
    void finish() const;

    /// Every parameter the run used, defaults filled in.
    const json& resolved() const { return resolved_; }

private:
    const json* lookup(const std::string& key);

    json object_;
    std::string context_;
    std::set<std::string> used_;
    json resolved_ = json::object();
};

}  // namespace ergolab::cli
