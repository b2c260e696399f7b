#include "ergolab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "ergolab/errors.hpp"
#include "ergolab/integrators.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

PhasePoint::PhasePoint(Vec q_, Vec p_) : q(std::move(q_)), p(std::move(p_)) {
    if (q.size() != p.size()) throw ValidationError("phase point: |q| != |p|");
}

PhasePoint::PhasePoint(double q_, double p_) : q(Vec::Constant(1, q_)), p(Vec::Constant(1, p_)) {}

Vec PhasePoint::flat() const {
    Vec z(q.size() + p.size());
    z << q, p;
    return z;
}

PhasePoint PhasePoint::from_flat(const Vec& z) {
    if (z.size() % 2 != 0) throw ValidationError("phase point: odd flat dimension");
    const Eigen::Index n = z.size() / 2;
    return PhasePoint(z.head(n), z.tail(n));
}

double SeparableHamiltonian::operator()(const PhasePoint& z) const {
    if (z.dof() != n) throw ValidationError("Hamiltonian '" + label + "': wrong phase dimension");
    return kinetic(z.p) + potential(z.q);
}

double SeparableHamiltonian::operator()(const Vec& z) const {
    if (static_cast<std::size_t>(z.size()) != 2 * n)
        throw ValidationError("Hamiltonian '" + label + "': wrong phase dimension");
    const auto dof = static_cast<Eigen::Index>(n);
    return kinetic(z.tail(dof)) + potential(z.head(dof));
}

VectorField hamiltonian_vector_field(const SeparableHamiltonian& h) {
    VectorField f;
    f.dim = 2 * h.n;
    f.label = h.label;
    const auto n = static_cast<Eigen::Index>(h.n);
    f.eval = [h, n](const Vec& z) {
        Vec out(2 * n);
        out.head(n) = h.kinetic_gradient(z.tail(n));
        out.tail(n) = -h.potential_gradient(z.head(n));
        return out;
    };
    f.divergence_analytic = [](const Vec&) { return 0.0; };
    if (h.kinetic_hessian && h.potential_hessian) {
        f.jacobian_analytic = [h, n](const Vec& z) {
            Mat jac = Mat::Zero(2 * n, 2 * n);
            jac.topRightCorner(n, n) = h.kinetic_hessian(z.tail(n));
            jac.bottomLeftCorner(n, n) = -h.potential_hessian(z.head(n));
            return jac;
        };
    }
    return f;
}

double energy(const SeparableHamiltonian& h, const PhasePoint& z) { return h(z); }
double energy(const SeparableHamiltonian& h, const Vec& z) { return h(z); }

SeparableHamiltonian harmonic_oscillator(double m, double omega) {
    if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("harmonic oscillator: m must be > 0");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw ValidationError("harmonic oscillator: omega must be > 0");
    const double k = m * omega * omega;
    SeparableHamiltonian h;
    h.n = 1;
    h.label = "harmonic";
    h.kinetic = [m](const Vec& p) { return p.squaredNorm() / (2.0 * m); };
    h.kinetic_gradient = [m](const Vec& p) -> Vec { return p / m; };
    h.kinetic_hessian = [m](const Vec& p) -> Mat {
        return Mat::Identity(p.size(), p.size()) / m;
    };
    h.potential = [k](const Vec& q) { return 0.5 * k * q.squaredNorm(); };
    h.potential_gradient = [k](const Vec& q) -> Vec { return k * q; };
    h.potential_hessian = [k](const Vec& q) -> Mat {
        return k * Mat::Identity(q.size(), q.size());
    };
    return h;
}

PhasePoint harmonic_exact(double amplitude, double delta, double omega, double t) {
    if (!(omega > 0.0)) throw ValidationError("harmonic_exact: omega must be > 0");
    const double phase = omega * (t - delta);
    return PhasePoint(amplitude * std::cos(phase), -amplitude * omega * std::sin(phase));
}

SeparableHamiltonian pendulum(double g_over_L) {
    if (!(g_over_L > 0.0) || !std::isfinite(g_over_L))
        throw ValidationError("pendulum: g_over_L must be > 0");
    SeparableHamiltonian h;
    h.n = 1;
    h.label = "pendulum";
    h.angular = true;
    h.kinetic = [](const Vec& p) { return 0.5 * p.squaredNorm(); };
    h.kinetic_gradient = [](const Vec& p) -> Vec { return p; };
    h.kinetic_hessian = [](const Vec& p) -> Mat { return Mat::Identity(p.size(), p.size()); };
    h.potential = [g_over_L](const Vec& q) { return g_over_L * (1.0 - std::cos(q[0])); };
    h.potential_gradient = [g_over_L](const Vec& q) -> Vec {
        return Vec::Constant(1, g_over_L * std::sin(q[0]));
    };
    h.potential_hessian = [g_over_L](const Vec& q) -> Mat {
        return Mat::Constant(1, 1, g_over_L * std::cos(q[0]));
    };
    return h;
}

SeparableHamiltonian polynomial_hamiltonian(std::vector<double> coefficients, double m) {
    if (!(m > 0.0)) throw ValidationError("polynomial Hamiltonian: m must be > 0");
    if (coefficients.empty()) throw ValidationError("polynomial Hamiltonian: no coefficients");
    for (double c : coefficients)
        if (!std::isfinite(c)) throw ValidationError("polynomial Hamiltonian: non-finite coefficient");

    // Horner on V(q) = q (c1 + q (c2 + ...)).
    auto value = [coefficients](double q) {
        double acc = 0.0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * q + *it;
        return acc * q;
    };
    auto first = [coefficients](double q) {
        double acc = 0.0;
        for (std::size_t k = coefficients.size(); k-- > 0;)
            acc = acc * q + static_cast<double>(k + 1) * coefficients[k];
        return acc;
    };
    auto second = [coefficients](double q) {
        double acc = 0.0;
        for (std::size_t k = coefficients.size(); k-- > 1;)
            acc = acc * q + static_cast<double>((k + 1) * k) * coefficients[k];
        return acc;
    };

    SeparableHamiltonian h;
    h.n = 1;
    h.label = "custom-polynomial";
    h.kinetic = [m](const Vec& p) { return p.squaredNorm() / (2.0 * m); };
    h.kinetic_gradient = [m](const Vec& p) -> Vec { return p / m; };
    h.kinetic_hessian = [m](const Vec& p) -> Mat {
        return Mat::Identity(p.size(), p.size()) / m;
    };
    h.potential = [value](const Vec& q) { return value(q[0]); };
    h.potential_gradient = [first](const Vec& q) -> Vec { return Vec::Constant(1, first(q[0])); };
    h.potential_hessian = [second](const Vec& q) -> Mat {
        return Mat::Constant(1, 1, second(q[0]));
    };
    return h;
}

std::pair<double, double> pendulum_momentum_from_energy(double energy, double theta,
                                                        double g_over_L) {
    if (!(g_over_L > 0.0)) throw ValidationError("pendulum: g_over_L must be > 0");
    const double radicand = 2.0 * (energy - g_over_L * (1.0 - std::cos(theta)));
    if (radicand < 0.0)
        throw TurningPointError("theta = " + std::to_string(theta) +
                                " is beyond the turning point at energy " +
                                std::to_string(energy));
    const double p = std::sqrt(radicand);
    return {p, -p};
}

std::string_view to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::libration: return "libration";
        case OrbitClass::rotation: return "rotation";
        case OrbitClass::separatrix: return "separatrix";
    }
    return "unknown";
}

OrbitClass classify_pendulum_orbit(double energy, double tol, double g_over_L) {
    if (!(energy >= 0.0)) throw ValidationError("classify_pendulum_orbit: energy must be >= 0");
    if (!(tol >= 0.0)) throw ValidationError("classify_pendulum_orbit: tol must be >= 0");
    const double threshold = 2.0 * g_over_L;
    if (energy < threshold - tol) return OrbitClass::libration;
    if (energy > threshold + tol) return OrbitClass::rotation;
    return OrbitClass::separatrix;
}

double energy_drift(const SeparableHamiltonian& h, const std::vector<Vec>& states) {
    if (states.empty()) return 0.0;
    const double h0 = h(states.front());
    double drift = 0.0;
    for (const auto& z : states) drift = std::max(drift, std::abs(h(z) - h0));
    return drift;
}

double energy_drift(const SeparableHamiltonian& h, const Trajectory& traj) {
    return energy_drift(h, traj.states);
}

double gradient_consistency_error(const SeparableHamiltonian& h, const PhasePoint& z) {
    auto check = [](const std::function<double(const Vec&)>& fn,
                    const std::function<Vec(const Vec&)>& grad, const Vec& x) {
        const Vec g = grad(x);
        double worst = 0.0;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double step = 1e-5 * std::max(1.0, std::abs(x[j]));
            Vec plus = x, minus = x;
            plus[j] += step;
            minus[j] -= step;
            worst = std::max(worst, std::abs((fn(plus) - fn(minus)) / (2.0 * step) - g[j]));
        }
        return worst;
    };
    return std::max(check(h.kinetic, h.kinetic_gradient, z.p),
                    check(h.potential, h.potential_gradient, z.q));
}

double wrap_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(theta, two_pi);  // [-pi, pi]
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

PhasePortrait phase_portrait(const SeparableHamiltonian& h,
                             const std::vector<PhasePoint>& initial_conditions, double t_final,
                             double dt, Scheme scheme, unsigned workers) {
    if (h.n != 1) throw ValidationError("phase_portrait: only planar (n = 1) systems");
    plan_steps(t_final, dt);
    for (const auto& ic : initial_conditions)
        if (ic.dof() != 1) throw ValidationError("phase_portrait: initial condition must be planar");

    std::vector<std::optional<PortraitOrbit>> slots(initial_conditions.size());
    std::vector<std::string> errors(initial_conditions.size());
    parallel_blocks(initial_conditions.size(), workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            try {
                const Trajectory traj = integrate(h, initial_conditions[i].flat(), t_final, dt, scheme);
                PortraitOrbit orbit;
                orbit.source = i;
                orbit.initial = initial_conditions[i];
                orbit.energy = h(initial_conditions[i]);
                orbit.t = traj.times;
                orbit.q.reserve(traj.size());
                orbit.p.reserve(traj.size());
                orbit.q_wrapped.reserve(traj.size());
                for (const auto& z : traj.states) {
                    orbit.q.push_back(z[0]);
                    orbit.p.push_back(z[1]);
                    orbit.q_wrapped.push_back(h.angular ? wrap_angle(z[0]) : z[0]);
                }
                slots[i] = std::move(orbit);
            } catch (const NumericalError& err) {
                errors[i] = err.what();
            }
        }
    });

    PhasePortrait portrait;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i])
            portrait.orbits.push_back(std::move(*slots[i]));
        else
            portrait.failures.push_back(PortraitFailure{i, errors[i]});
    }
    return portrait;
}

}  // namespace ergolab
