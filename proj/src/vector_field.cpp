#include "ergolab/vector_field.hpp"

#include <cmath>

#include "ergolab/errors.hpp"

namespace ergolab {

bool all_finite(const Vec& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i])) return false;
    return true;
}

Vec VectorField::operator()(const Vec& x) const {
    if (static_cast<std::size_t>(x.size()) != dim)
        throw ValidationError("vector field '" + label + "': expected dimension " +
                              std::to_string(dim) + ", got " + std::to_string(x.size()));
    Vec out = eval(x);
    if (static_cast<std::size_t>(out.size()) != dim)
        throw ValidationError("vector field '" + label + "': eval returned wrong dimension");
    return out;
}

VectorField VectorField::without_analytic() const {
    VectorField copy = *this;
    copy.divergence_analytic = nullptr;
    copy.jacobian_analytic = nullptr;
    return copy;
}

Vec PointMap::operator()(const Vec& x) const {
    if (static_cast<std::size_t>(x.size()) != dim)
        throw ValidationError("map '" + label + "': expected dimension " +
                              std::to_string(dim) + ", got " + std::to_string(x.size()));
    Vec out = eval(x);
    if (static_cast<std::size_t>(out.size()) != dim)
        throw ValidationError("map '" + label + "': eval returned wrong dimension");
    return out;
}

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::rk4: return "rk4";
        case Scheme::symplectic_euler: return "symplectic_euler";
        case Scheme::leapfrog: return "leapfrog";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "rk4") return Scheme::rk4;
    if (name == "symplectic_euler") return Scheme::symplectic_euler;
    if (name == "leapfrog") return Scheme::leapfrog;
    throw ValidationError("unknown integration scheme '" + std::string(name) +
                          "' (expected rk4, symplectic_euler or leapfrog)");
}

}  // namespace ergolab
