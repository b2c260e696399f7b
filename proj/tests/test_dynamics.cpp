#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ergolab/errors.hpp"
#include "ergolab/hamiltonian.hpp"
#include "ergolab/integrators.hpp"
#include "ergolab/liouville.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/systems.hpp"

using namespace ergolab;

namespace {

Vec v1(double x) { return Vec::Constant(1, x); }

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

VectorField rotation_field() {
    return VectorField{2, [](const Vec& z) { return v2(z[1], -z[0]); }, {}, {}, "rotation"};
}

VectorField zero_field(std::size_t d) {
    return VectorField{d, [d](const Vec&) -> Vec { return Vec::Zero(static_cast<Eigen::Index>(d)); },
                       {}, {}, "zero"};
}

SeparableHamiltonian free_particle() {
    SeparableHamiltonian h;
    h.n = 1;
    h.label = "free";
    h.kinetic = [](const Vec& p) { return 0.5 * p.squaredNorm(); };
    h.kinetic_gradient = [](const Vec& p) -> Vec { return p; };
    h.potential = [](const Vec&) { return 0.0; };
    h.potential_gradient = [](const Vec& q) -> Vec { return Vec::Zero(q.size()); };
    return h;
}

std::vector<Vec> random_points(std::size_t count, double half_width, std::uint64_t seed) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < count; ++i) {
        SampleStream rng(seed, i);
        pts.push_back(v2(rng.uniform(-half_width, half_width), rng.uniform(-half_width, half_width)));
    }
    return pts;
}

}  // namespace

TEST_CASE("rk4_step") {
    SUBCASE("zero field leaves the point in place") {
        CHECK(rk4_step(zero_field(3), Vec::Constant(3, 0.7), 0.1) == Vec::Constant(3, 0.7));
    }
    SUBCASE("rotation field against the closed-form rotation") {
        const Vec z = rk4_step(rotation_field(), v2(1.0, 0.0), 0.01);
        CHECK(std::abs(z[0] - std::cos(0.01)) <= 1e-9);
        CHECK(std::abs(z[1] + std::sin(0.01)) <= 1e-9);
    }
    SUBCASE("exponential growth") {
        const VectorField grow{1, [](const Vec& x) -> Vec { return x; }, {}, {}, "exp"};
        CHECK(std::abs(rk4_step(grow, v1(1.0), 0.1)[0] - std::exp(0.1)) <= 1e-7);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(rk4_step(rotation_field(), v2(1.0, 0.0), 0.0), ValidationError);
        const VectorField bad{1, [](const Vec&) { return v1(std::nan("")); }, {}, {}, "nan"};
        CHECK_THROWS_AS(rk4_step(bad, v1(1.0), 0.1), NonFiniteStateError);
    }
}

TEST_CASE("symplectic_euler_step") {
    SUBCASE("free drift") {
        const Vec z = symplectic_euler_step(free_particle(), v2(0.5, 2.0), 0.1);
        CHECK(z[0] == doctest::Approx(0.7));
        CHECK(z[1] == 2.0);
    }
    SUBCASE("harmonic, hand-evaluated update") {
        const Vec z = symplectic_euler_step(harmonic_oscillator(1.0, 1.0), v2(1.0, 0.0), 0.1);
        CHECK(std::abs(z[1] - (-0.1)) <= 1e-15);
        CHECK(std::abs(z[0] - 0.99) <= 1e-15);
    }
    SUBCASE("backward then forward step is O(dt^2) from the start") {
        const auto h = pendulum(1.0);
        const Vec z0 = v2(0.4, 0.3);
        double previous = 0.0;
        for (double dt : {0.1, 0.05, 0.025}) {
            const Vec back = symplectic_euler_step(h, symplectic_euler_step(h, z0, -dt), dt);
            const double err = (back - z0).norm();
            CHECK(err <= 2.0 * dt * dt);
            if (previous > 0.0) CHECK(previous / err == doctest::Approx(4.0).epsilon(0.1));
            previous = err;
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(symplectic_euler_step(pendulum(1.0), Vec::Zero(3), 0.1), ValidationError);
    }
}

TEST_CASE("leapfrog_step") {
    SUBCASE("free drift matches symplectic Euler") {
        const Vec a = leapfrog_step(free_particle(), v2(0.5, 2.0), 0.1);
        const Vec b = symplectic_euler_step(free_particle(), v2(0.5, 2.0), 0.1);
        CHECK(a == b);
    }
    SUBCASE("harmonic, hand-evaluated kick-drift-kick") {
        // p_half = -0.05, q = 1 + 0.1 * (-0.05) = 0.995, p = -0.05 - 0.05 * 0.995.
        const Vec z = leapfrog_step(harmonic_oscillator(1.0, 1.0), v2(1.0, 0.0), 0.1);
        CHECK(std::abs(z[0] - 0.995) <= 1e-12);
        CHECK(std::abs(z[1] - (-0.09975)) <= 1e-12);
    }
    SUBCASE("forward then backward returns to the start") {
        const auto h = pendulum(1.0);
        const Vec z0 = v2(1.2, -0.4);
        CHECK((leapfrog_step(h, leapfrog_step(h, z0, 0.1), -0.1) - z0).norm() <= 1e-12);
    }
}

TEST_CASE("plan_steps") {
    const auto exact = plan_steps(1.0, 0.1);
    CHECK(exact.full_steps == 10);
    CHECK(exact.partial == 0.0);
    const auto partial = plan_steps(1.05, 0.1);
    CHECK(partial.full_steps == 10);
    CHECK(partial.partial == doctest::Approx(0.05));
    CHECK_THROWS_AS(plan_steps(0.0, 0.1), ValidationError);
    CHECK_THROWS_AS(plan_steps(1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(plan_steps(1.0, 2.0), ValidationError);
}

TEST_CASE("integrate") {
    SUBCASE("zero field gives a constant trajectory") {
        const auto traj = integrate(zero_field(2), v2(0.3, -0.2), 1.0, 0.1);
        CHECK(traj.size() == 11);
        for (const auto& z : traj.states) CHECK(z == v2(0.3, -0.2));
    }
    SUBCASE("trajectory metadata") {
        const auto traj = integrate(rotation_field(), v2(1.0, 0.0), 1.05, 0.1);
        CHECK(traj.times.front() == 0.0);
        CHECK(traj.times.back() == 1.05);
        CHECK(traj.partial_final_step);
        CHECK(traj.final_step == doctest::Approx(0.05));
        for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
        // Partial step lands on the exact rotation angle.
        CHECK(std::abs(traj.back()[0] - std::cos(1.05)) <= 1e-6);
    }
    SUBCASE("harmonic oscillator closes after one period") {
        const auto traj = integrate(harmonic_oscillator(1.0, 1.0), v2(1.0, 0.0),
                                    2.0 * std::numbers::pi, 1e-3, Scheme::rk4);
        CHECK(std::abs(traj.times.back() - 2.0 * std::numbers::pi) <= 0.5e-3);
        CHECK((traj.back() - v2(1.0, 0.0)).norm() <= 1e-8);
    }
    SUBCASE("pendulum rotation orbit (E = 3) has monotone theta") {
        // p^2 = 2(E - (1 - cos theta)) >= 2 so p never changes sign.
        const auto traj = integrate(pendulum(1.0), v2(0.0, std::sqrt(6.0)), 20.0, 1e-3,
                                    Scheme::leapfrog);
        for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj.states[i][0] > traj.states[i - 1][0]);
    }
    SUBCASE("blow-up reports the failing step") {
        const VectorField blow{1, [](const Vec& x) -> Vec { return x.array().square() * 1e3; }, {}, {},
                               "blow"};
        try {
            integrate(blow, v1(1.0), 5.0, 0.01);
            FAIL("expected NonFiniteStateError");
        } catch (const NonFiniteStateError& e) {
            REQUIRE(e.step().has_value());
            CHECK(*e.step() >= 1);
        }
    }
}

TEST_CASE("divergence") {
    SUBCASE("Hamiltonian fields are divergence-free (finite differences)") {
        for (const auto& h : {harmonic_oscillator(1.0, 1.0), pendulum(1.0), harmonic_oscillator(2.0, 3.0)}) {
            const auto field = hamiltonian_vector_field(h);
            for (const auto& z : random_points(20, 3.0, 5))
                CHECK(std::abs(divergence_fd(field, z, default_fd_step(z))) <= 1e-6);
        }
    }
    SUBCASE("identity field") {
        const VectorField f{2, [](const Vec& z) { return z; }, {}, {}, "id"};
        CHECK(std::abs(divergence(f, v2(0.3, 0.4)) - 2.0) <= 1e-8);
    }
    SUBCASE("damped oscillator") {
        for (double gamma : {0.1, 0.5, 2.0}) {
            const auto f = damped_oscillator(gamma);
            CHECK(divergence(f, v2(0.2, 0.7)) == -gamma);
            CHECK(std::abs(divergence_fd(f, v2(0.2, 0.7), 1e-5) + gamma) <= 1e-8);
        }
    }
    SUBCASE("finite differences match analytic divergence on shipped fields") {
        std::vector<VectorField> fields{hamiltonian_vector_field(harmonic_oscillator(1.0, 1.0)),
                                        hamiltonian_vector_field(harmonic_oscillator(1.0, 2.0)),
                                        hamiltonian_vector_field(pendulum(1.0)),
                                        hamiltonian_vector_field(pendulum(2.0)),
                                        hamiltonian_vector_field(polynomial_hamiltonian({0.0, 0.5, 0.0, 0.25})),
                                        damped_oscillator(0.1), damped_oscillator(0.5)};
        for (const auto& f : fields)
            for (const auto& z : random_points(100, 2.0, 17)) {
                CHECK(std::abs(divergence_fd(f, z, default_fd_step(z)) - f.divergence_analytic(z)) <= 1e-6);
                // trace(DF) = div F for the analytic pair.
                REQUIRE(f.has_jacobian());
                CHECK(std::abs(f.jacobian_analytic(z).trace() - f.divergence_analytic(z)) <= 1e-9);
            }
    }
}

TEST_CASE("flow_det_variational") {
    const auto harmonic = hamiltonian_vector_field(harmonic_oscillator(1.0, 1.0));
    CHECK(flow_det_variational(harmonic, v2(1.0, 0.0), 0.0, 1e-3) == 1.0);
    CHECK(std::abs(flow_det_variational(harmonic, v2(1.0, 0.0), 5.0, 1e-3) - 1.0) <= 1e-6);
    // Linear constant-coefficient system: det = exp(trace * t) = exp(-gamma t).
    CHECK(std::abs(flow_det_variational(damped_oscillator(0.5), v2(1.0, 0.0), 2.0, 1e-3) -
                   std::exp(-1.0)) <= 1e-6);
    SUBCASE("finite-difference Jacobian route agrees") {
        const auto fd_only = hamiltonian_vector_field(pendulum(1.0)).without_analytic();
        CHECK(std::abs(flow_det_variational(fd_only, v2(1.0, 0.5), 3.0, 1e-3) - 1.0) <= 1e-6);
    }
    CHECK_THROWS_AS(flow_det_variational(harmonic, v2(1.0, 0.0), -1.0, 1e-3), ValidationError);
}

TEST_CASE("flow_det_liouville") {
    const auto harmonic = hamiltonian_vector_field(harmonic_oscillator(1.0, 1.0));
    CHECK(std::abs(flow_det_liouville(harmonic, v2(1.0, 0.0), 5.0, 1e-3) - 1.0) <= 1e-12);
    CHECK(std::abs(flow_det_liouville(harmonic.without_analytic(), v2(1.0, 0.0), 5.0, 1e-3) - 1.0) <=
          1e-8);
    CHECK(std::abs(flow_det_liouville(damped_oscillator(0.5), v2(1.0, 0.0), 2.0, 1e-3) -
                   std::exp(-1.0)) <= 1e-8);
    CHECK(flow_det_liouville(harmonic, v2(1.0, 0.0), 0.0, 1e-3) == 1.0);
}

TEST_CASE("integrate_samples quadrature") {
    // Simpson is exact on cubics: integral of t^3 over [0, 2] = 4.
    std::vector<double> cubic;
    for (int i = 0; i <= 10; ++i) cubic.push_back(std::pow(0.2 * i, 3));
    CHECK(integrate_samples(cubic, 0.2, 0.0) == doctest::Approx(4.0).epsilon(1e-13));
    // Odd interval count falls back to the trapezoid rule, exact on linears.
    std::vector<double> line{0.0, 1.0, 2.0, 3.0};
    CHECK(integrate_samples(line, 1.0, 0.0) == doctest::Approx(4.5));
    // Trailing partial panel.
    std::vector<double> with_tail{1.0, 1.0, 1.0, 1.0};
    CHECK(integrate_samples(with_tail, 1.0, 0.5) == doctest::Approx(2.5));
}

TEST_CASE("map_jacobian_det") {
    const PointMap id{2, [](const Vec& x) { return x; }, "id"};
    CHECK(std::abs(map_jacobian_det(id, v2(0.3, 0.9)) - 1.0) <= 1e-9);
    const PointMap squeeze{2, [](const Vec& x) { return v2(2.0 * x[0], 0.5 * x[1]); }, "squeeze"};
    CHECK(std::abs(map_jacobian_det(squeeze, v2(0.3, 0.9)) - 1.0) <= 1e-9);
    const PointMap stretch{2, [](const Vec& x) { return v2(2.0 * x[0], x[1]); }, "stretch"};
    CHECK(std::abs(map_jacobian_det(stretch, v2(-1.0, 4.0), 1e-5) - 2.0) <= 1e-8);
    const PointMap bad{2, [](const Vec& x) { return v2(std::log(x[0]), x[1]); }, "log"};
    CHECK_THROWS_AS(map_jacobian_det(bad, v2(0.0, 1.0)), NumericalError);
    CHECK_THROWS_AS(map_jacobian_det(id, v2(0.0, 1.0), 0.0), ValidationError);
}

TEST_CASE("divergence-free flows preserve volume by both routes") {
    const std::vector<VectorField> fields{hamiltonian_vector_field(harmonic_oscillator(1.0, 1.0)),
                                          hamiltonian_vector_field(pendulum(1.0))};
    for (const auto& f : fields)
        for (const auto& z : random_points(20, 2.0, 23)) {
            CHECK(std::abs(flow_det_variational(f, z, 10.0, 1e-3) - 1.0) <= 1e-5);
            CHECK(std::abs(flow_det_liouville(f.without_analytic(), z, 10.0, 1e-3) - 1.0) <= 1e-5);
        }
}

TEST_CASE("determinant routes agree on the damped oscillator") {
    for (double gamma : {0.1, 0.5})
        for (double t : {0.5, 1.0, 2.5, 5.0})
            for (const auto& z : random_points(5, 2.0, 31)) {
                const auto cmp = compare_flow_dets(damped_oscillator(gamma), z, t, 1e-3);
                CHECK(std::abs(cmp.det_variational - cmp.det_liouville) <= 1e-4);
                CHECK(cmp.t == t);
            }
}

TEST_CASE("rk4 is fourth order on the harmonic oscillator") {
    const auto h = harmonic_oscillator(1.0, 1.0);
    const double t = 10.0;
    auto end_error = [&](double dt) {
        const auto traj = integrate(h, v2(1.0, 0.0), t, dt, Scheme::rk4);
        const PhasePoint exact = harmonic_exact(1.0, 0.0, 1.0, traj.times.back());
        return (traj.back() - exact.flat()).norm();
    };
    const double e1 = end_error(1e-2), e2 = end_error(5e-3), e3 = end_error(2.5e-3);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
    CHECK(e2 / e3 >= 12.0);
    CHECK(e2 / e3 <= 20.0);
}

TEST_CASE("leapfrog energy error is bounded without secular drift") {
    const auto h = harmonic_oscillator(1.0, 1.0);
    const auto traj = integrate(h, v2(1.0, 0.0), 100.0, 1e-3, Scheme::leapfrog);
    const double h0 = h(traj.states.front());
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        double& bucket = traj.times[i] <= 50.0 ? first : second;
        bucket = std::max(bucket, std::abs(h(traj.states[i]) - h0));
    }
    CHECK(std::max(first, second) <= 1e-5);
    CHECK(second <= first + 1e-7);
}

TEST_CASE("leapfrog is time-reversible over many steps") {
    const auto h = pendulum(1.0);
    const Vec z0 = v2(0.8, 0.1);
    const std::size_t k = 10'000;
    Vec z = z0;
    for (std::size_t i = 0; i < k; ++i) z = leapfrog_step(h, z, 1e-3);
    for (std::size_t i = 0; i < k; ++i) z = leapfrog_step(h, z, -1e-3);
    CHECK((z - z0).norm() <= 1e-10 * static_cast<double>(k));
}
