#include "ergolab/integrators.hpp"

#include <cmath>

#include "ergolab/errors.hpp"
#include "ergolab/hamiltonian.hpp"

namespace ergolab {

namespace {

void require_nonzero_dt(double dt) {
    if (dt == 0.0 || !std::isfinite(dt)) throw ValidationError("step size must be finite and nonzero");
}

Vec checked(Vec x, const char* scheme) {
    if (!all_finite(x)) throw NonFiniteStateError(std::string(scheme) + ": non-finite state");
    return x;
}

void require_phase_dim(const SeparableHamiltonian& h, const Vec& z) {
    if (static_cast<std::size_t>(z.size()) != 2 * h.n)
        throw ValidationError("phase point has dimension " + std::to_string(z.size()) +
                              ", expected " + std::to_string(2 * h.n));
}

template <class Step>
Trajectory run(const Vec& z0, double t_final, double dt, Scheme scheme, Step&& step) {
    const StepPlan plan = plan_steps(t_final, dt);
    if (!all_finite(z0)) throw NonFiniteStateError("non-finite initial state", 0);

    Trajectory traj;
    traj.scheme = scheme;
    traj.dt = dt;
    traj.partial_final_step = plan.partial > 0.0;
    traj.final_step = traj.partial_final_step ? plan.partial : dt;
    traj.times.reserve(plan.total_steps() + 1);
    traj.states.reserve(plan.total_steps() + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(z0);

    Vec z = z0;
    for (std::size_t k = 0; k < plan.total_steps(); ++k) {
        const bool last_partial = k == plan.full_steps;
        const double h = last_partial ? plan.partial : dt;
        try {
            z = step(z, h);
        } catch (const NonFiniteStateError& e) {
            throw NonFiniteStateError(std::string(to_string(scheme)) + ": non-finite state", k + 1);
        }
        traj.times.push_back(last_partial ? t_final : static_cast<double>(k + 1) * dt);
        traj.states.push_back(z);
    }
    return traj;
}

}  // namespace

Vec rk4_step(const VectorField& field, const Vec& x, double dt) {
    require_nonzero_dt(dt);
    const Vec k1 = field(x);
    const Vec k2 = field(x + 0.5 * dt * k1);
    const Vec k3 = field(x + 0.5 * dt * k2);
    const Vec k4 = field(x + dt * k3);
    return checked(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), "rk4");
}

Vec symplectic_euler_step(const SeparableHamiltonian& h, const Vec& z, double dt) {
    require_nonzero_dt(dt);
    require_phase_dim(h, z);
    const auto n = static_cast<Eigen::Index>(h.n);
    Vec out(z.size());
    const Vec q = z.head(n);
    const Vec p = z.tail(n) - dt * h.potential_gradient(q);
    out.head(n) = q + dt * h.kinetic_gradient(p);
    out.tail(n) = p;
    return checked(std::move(out), "symplectic_euler");
}

Vec leapfrog_step(const SeparableHamiltonian& h, const Vec& z, double dt) {
    require_nonzero_dt(dt);
    require_phase_dim(h, z);
    const auto n = static_cast<Eigen::Index>(h.n);
    Vec out(z.size());
    const Vec p_half = z.tail(n) - 0.5 * dt * h.potential_gradient(z.head(n));
    const Vec q = z.head(n) + dt * h.kinetic_gradient(p_half);
    out.head(n) = q;
    out.tail(n) = p_half - 0.5 * dt * h.potential_gradient(q);
    return checked(std::move(out), "leapfrog");
}

StepPlan plan_steps(double t_final, double dt) {
    if (!(t_final > 0.0) || !std::isfinite(t_final))
        throw ValidationError("t_final must be finite and > 0");
    if (!(dt > 0.0) || dt > t_final)
        throw ValidationError("dt must satisfy 0 < dt <= t_final");
    StepPlan plan;
    plan.dt = dt;
    plan.full_steps = static_cast<std::size_t>(std::floor(t_final / dt + 1e-9));
    const double rem = t_final - static_cast<double>(plan.full_steps) * dt;
    plan.partial = rem > 1e-9 * dt ? rem : 0.0;
    return plan;
}

Trajectory integrate(const VectorField& field, const Vec& z0, double t_final, double dt) {
    return run(z0, t_final, dt, Scheme::rk4,
               [&](const Vec& z, double h) { return rk4_step(field, z, h); });
}

Trajectory integrate(const SeparableHamiltonian& h, const Vec& z0, double t_final, double dt,
                     Scheme scheme) {
    require_phase_dim(h, z0);
    switch (scheme) {
        case Scheme::rk4: {
            const VectorField field = hamiltonian_vector_field(h);
            return run(z0, t_final, dt, scheme,
                       [&](const Vec& z, double step) { return rk4_step(field, z, step); });
        }
        case Scheme::symplectic_euler:
            return run(z0, t_final, dt, scheme,
                       [&](const Vec& z, double step) { return symplectic_euler_step(h, z, step); });
        case Scheme::leapfrog:
            return run(z0, t_final, dt, scheme,
                       [&](const Vec& z, double step) { return leapfrog_step(h, z, step); });
    }
    throw ValidationError("unknown scheme");
}

Vec flow_to(const VectorField& field, const Vec& x, double t, double dt) {
    if (t == 0.0) return x;
    const StepPlan plan = plan_steps(t, dt);
    Vec z = x;
    for (std::size_t k = 0; k < plan.total_steps(); ++k) {
        try {
            z = rk4_step(field, z, k == plan.full_steps ? plan.partial : dt);
        } catch (const NonFiniteStateError&) {
            throw NonFiniteStateError("rk4: non-finite state", k + 1);
        }
    }
    return z;
}

}  // namespace ergolab
