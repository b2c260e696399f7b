#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "ergolab/vector_field.hpp"

namespace ergolab {

/// Phase point z = (q, p) with |q| = |p| = n. The flat layout used by vector
/// fields and trajectories is (q_1..q_n, p_1..p_n).
struct PhasePoint {
    Vec q;
    Vec p;

    PhasePoint() = default;
    PhasePoint(Vec q_, Vec p_);
    PhasePoint(double q_, double p_);

    std::size_t dof() const { return static_cast<std::size_t>(q.size()); }
    Vec flat() const;
    static PhasePoint from_flat(const Vec& z);
};

/// H(q, p) = T(p) + V(q).
struct SeparableHamiltonian {
    std::size_t n = 1;
    std::function<double(const Vec&)> kinetic;
    std::function<Vec(const Vec&)> kinetic_gradient;
    std::function<double(const Vec&)> potential;
    std::function<Vec(const Vec&)> potential_gradient;
    // Optional second derivatives; when present the Hamiltonian field gets an
    // analytic Jacobian.
    std::function<Mat(const Vec&)> kinetic_hessian;
    std::function<Mat(const Vec&)> potential_hessian;
    std::string label;
    /// q is an angle (pendulum); portraits also report it wrapped to (-pi, pi].
    bool angular = false;

    double operator()(const PhasePoint& z) const;
    double operator()(const Vec& z) const;
};

}  // namespace ergolab
