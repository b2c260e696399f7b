#pragma once

// Fixed-step integrators. Non-finite results raise NonFiniteStateError.

#include <cstddef>

#include "ergolab/separable_hamiltonian.hpp"
#include "ergolab/vector_field.hpp"

namespace ergolab {

/// Classical four-stage Runge-Kutta step.
Vec rk4_step(const VectorField& field, const Vec& x, double dt);

/// Kick then drift: p <- p - dt grad V(q); q <- q + dt grad T(p_new).
Vec symplectic_euler_step(const SeparableHamiltonian& h, const Vec& z, double dt);

/// Stormer-Verlet: half kick, drift, half kick.
Vec leapfrog_step(const SeparableHamiltonian& h, const Vec& z, double dt);

/// How a horizon [0, t_final] is cut into uniform steps of size dt.
struct StepPlan {
    std::size_t full_steps = 0;
    double dt = 0.0;
    double partial = 0.0;  // length of a trailing shortened step, or 0

    std::size_t total_steps() const { return full_steps + (partial > 0.0 ? 1 : 0); }
};

/// Throws ValidationError unless t_final > 0 and 0 < dt <= t_final.
StepPlan plan_steps(double t_final, double dt);

/// RK4 trajectory of a general field.
Trajectory integrate(const VectorField& field, const Vec& z0, double t_final, double dt);

/// Trajectory of X_H with any scheme; rk4 integrates the Hamiltonian field.
Trajectory integrate(const SeparableHamiltonian& h, const Vec& z0, double t_final, double dt,
                     Scheme scheme);

/// Final state of the RK4 flow without storing the trajectory. t may be 0.
Vec flow_to(const VectorField& field, const Vec& x, double t, double dt);

}  // namespace ergolab
