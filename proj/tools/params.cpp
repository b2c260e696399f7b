#include "params.hpp"

#include <cmath>

#include "ergolab/errors.hpp"

namespace ergolab::cli {

Params::Params(json object, std::string context) : object_(std::move(object)), context_(std::move(context)) {
    if (object_.is_null()) object_ = json::object();
    if (!object_.is_object()) throw ValidationError(context_ + ": \"parameters\" must be an object");
}

bool Params::has(const std::string& key) const { return object_.contains(key); }

const json* Params::lookup(const std::string& key) {
    used_.insert(key);
    const auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
}

void Params::fail(const std::string& key, const std::string& message) const {
    throw ValidationError(context_ + ": parameter \"" + key + "\" " + message);
}

double Params::real(const std::string& key, double fallback) {
    const json* v = lookup(key);
    double out = fallback;
    if (v) {
        if (!v->is_number()) fail(key, "must be a number");
        out = v->get<double>();
    }
    if (!std::isfinite(out)) fail(key, "must be finite");
    resolved_[key] = out;
    return out;
}

std::uint64_t Params::integer(const std::string& key, std::uint64_t fallback) {
    const json* v = lookup(key);
    std::uint64_t out = fallback;
    if (v) {
        if (v->is_number_unsigned()) {
            out = v->get<std::uint64_t>();
        } else if (v->is_number_integer()) {
            fail(key, "must be non-negative");
        } else if (v->is_number_float()) {
            const double d = v->get<double>();
            if (!(d >= 0.0 && d <= 9.0e15 && d == std::floor(d)))
                fail(key, "must be a non-negative integer");
            out = static_cast<std::uint64_t>(d);
        } else {
            fail(key, "must be an integer");
        }
    }
    resolved_[key] = out;
    return out;
}

std::vector<double> Params::reals(const std::string& key, std::vector<double> fallback) {
    const json* v = lookup(key);
    std::vector<double> out = std::move(fallback);
    if (v) {
        if (!v->is_array()) fail(key, "must be an array of numbers");
        out.clear();
        for (const auto& e : *v) {
            if (!e.is_number()) fail(key, "must be an array of numbers");
            out.push_back(e.get<double>());
        }
    }
    if (out.empty()) fail(key, "must not be empty");
    for (double d : out)
        if (!std::isfinite(d)) fail(key, "entries must be finite");
    resolved_[key] = out;
    return out;
}

std::string Params::text(const std::string& key, std::string fallback) {
    const json* v = lookup(key);
    std::string out = std::move(fallback);
    if (v) {
        if (!v->is_string()) fail(key, "must be a string");
        out = v->get<std::string>();
    }
    resolved_[key] = out;
    return out;
}

double Params::positive(const std::string& key, double fallback) {
    const double v = real(key, fallback);
    if (!(v > 0.0)) fail(key, "must be > 0");
    return v;
}

double Params::non_negative(const std::string& key, double fallback) {
    const double v = real(key, fallback);
    if (v < 0.0) fail(key, "must be >= 0");
    return v;
}

std::uint64_t Params::positive_integer(const std::string& key, std::uint64_t fallback) {
    const std::uint64_t v = integer(key, fallback);
    if (v == 0) fail(key, "must be >= 1");
    return v;
}

void Params::finish() const {
    for (const auto& [key, _] : object_.items())
        if (!used_.count(key)) throw ValidationError(context_ + ": unknown parameter \"" + key + "\"");
}

}  // namespace ergolab::cli
