#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ergolab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Membership predicate for a measurable set given only by its indicator.
using Indicator = std::function<bool(const Vec&)>;

bool all_finite(const Vec& x);

/// Autonomous vector field F : R^d -> R^d, optionally with its analytic
/// divergence and Jacobian.
struct VectorField {
    std::size_t dim = 0;
    std::function<Vec(const Vec&)> eval;
    std::function<double(const Vec&)> divergence_analytic;  // may be empty
    std::function<Mat(const Vec&)> jacobian_analytic;       // may be empty
    std::string label;

    Vec operator()(const Vec& x) const;
    bool has_divergence() const { return static_cast<bool>(divergence_analytic); }
    bool has_jacobian() const { return static_cast<bool>(jacobian_analytic); }

    /// Same field with the analytic extras removed, so every derived quantity
    /// falls back to finite differences of eval.
    VectorField without_analytic() const;
};

/// Discrete map f : R^d -> R^d.
struct PointMap {
    std::size_t dim = 0;
    std::function<Vec(const Vec&)> eval;
    std::string label;

    Vec operator()(const Vec& x) const;
};

enum class Scheme { rk4, symplectic_euler, leapfrog };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

/// Uniformly sampled solution. times[0] = 0; a shortened last step closes
/// the horizon when t_final is not a multiple of dt.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    Scheme scheme = Scheme::rk4;
    double dt = 0.0;
    double final_step = 0.0;  // length of the last step; < dt iff partial
    bool partial_final_step = false;

    std::size_t size() const { return states.size(); }
    const Vec& back() const { return states.back(); }
};

}  // namespace ergolab
