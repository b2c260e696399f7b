#pragma once

// Hamiltonian systems H = T(p) + V(q): the Hamiltonian vector field, energy
// audits, the harmonic oscillator and the pendulum, and planar phase portraits.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ergolab/separable_hamiltonian.hpp"
#include "ergolab/vector_field.hpp"

namespace ergolab {

/// z -> (grad T(p), -grad V(q)) on R^{2n}, divergence identically zero.
/// Carries an analytic Jacobian when both Hessians are supplied.
VectorField hamiltonian_vector_field(const SeparableHamiltonian& h);

double energy(const SeparableHamiltonian& h, const PhasePoint& z);
double energy(const SeparableHamiltonian& h, const Vec& z);

/// H = p^2 / 2m + m omega^2 q^2 / 2.
SeparableHamiltonian harmonic_oscillator(double m, double omega);

/// q(t) = A cos(omega (t - delta)), p(t) = -A omega sin(omega (t - delta)),
/// unit mass.
PhasePoint harmonic_exact(double amplitude, double delta, double omega, double t);

/// H = p^2 / 2 + (g/L)(1 - cos theta), so V(0) = 0.
SeparableHamiltonian pendulum(double g_over_L);

/// H = p^2 / 2m + sum_k c_k q^k for k >= 1 (coefficients[0] is c_1), so
/// V(0) = 0. One degree of freedom.
SeparableHamiltonian polynomial_hamiltonian(std::vector<double> coefficients, double m = 1.0);

/// The two momentum branches (+p, -p) with p = sqrt(2 (E - g/L (1 - cos theta))).
/// Throws TurningPointError when theta is not reachable at energy E.
std::pair<double, double> pendulum_momentum_from_energy(double energy, double theta,
                                                        double g_over_L = 1.0);

enum class OrbitClass { libration, rotation, separatrix };

std::string_view to_string(OrbitClass c);

/// Libration below the separatrix energy 2 g/L (minus tol), rotation above it
/// (plus tol), separatrix in between.
OrbitClass classify_pendulum_orbit(double energy, double tol = 1e-9, double g_over_L = 1.0);

/// max_t |H(z_t) - H(z_0)| over the trajectory samples.
double energy_drift(const SeparableHamiltonian& h, const Trajectory& traj);
double energy_drift(const SeparableHamiltonian& h, const std::vector<Vec>& states);

/// Largest mismatch between supplied and central-difference gradients of T
/// and V at z.
double gradient_consistency_error(const SeparableHamiltonian& h, const PhasePoint& z);

/// Wrap an angle to (-pi, pi].
double wrap_angle(double theta);

struct PortraitOrbit {
    std::size_t source = 0;  // index into the initial-condition list
    PhasePoint initial;
    double energy = 0.0;     // H at the initial condition
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> p;
    std::vector<double> q_wrapped;  // equals q unless the Hamiltonian is angular
};

struct PortraitFailure {
    std::size_t source = 0;
    std::string message;
};

struct PhasePortrait {
    std::vector<PortraitOrbit> orbits;
    std::vector<PortraitFailure> failures;
};

/// One (q, p) polyline per initial condition. n must be 1. Orbits whose
/// integration fails are skipped and reported in `failures`.
PhasePortrait phase_portrait(const SeparableHamiltonian& h,
                             const std::vector<PhasePoint>& initial_conditions,
                             double t_final, double dt, Scheme scheme, unsigned workers = 1);

}  // namespace ergolab
