#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ergolab/errors.hpp"
#include "ergolab/hamiltonian.hpp"
#include "ergolab/measure.hpp"
#include "ergolab/recurrence.hpp"
#include "ergolab/systems.hpp"

using namespace ergolab;

namespace {

constexpr double pi = std::numbers::pi;

Vec v1(double x) { return Vec::Constant(1, x); }

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

Indicator interval(double lo, double hi) {
    return [lo, hi](const Vec& x) { return lo <= x[0] && x[0] < hi; };
}

Indicator disk(Vec center, double radius) {
    return [center, radius](const Vec& z) { return (z - center).norm() < radius; };
}

// Brute-force first return of x -> x + alpha mod 1, written independently of
// circle_rotation.
std::size_t brute_first_return(double x, double alpha, double lo, double hi, std::size_t cap) {
    long double y = x;
    for (std::size_t n = 1; n <= cap; ++n) {
        y += alpha;
        y -= std::floor(y);
        if (lo <= y && y < hi) return n;
    }
    return 0;
}

}  // namespace

TEST_CASE("orbit_returns_map") {
    SUBCASE("identity map returns every step") {
        const PointMap id{1, [](const Vec& x) { return x; }, "id"};
        const auto rec = orbit_returns_map(id, interval(0.0, 0.5), v1(0.2), 25);
        CHECK(rec.first_return == 1.0);
        CHECK(rec.return_count == 25);
        CHECK(rec.horizon == 25.0);
    }
    SUBCASE("quarter rotation returns at n = 4") {
        CHECK(brute_first_return(0.1, 0.25, 0.0, 0.3, 10) == 4);
        const auto rec = orbit_returns_map(circle_rotation(0.25), interval(0.0, 0.3), v1(0.1), 100);
        CHECK(rec.first_return == 4.0);
        CHECK(rec.return_count == 25);
    }
    SUBCASE("contraction leaves [0.5, 1) for good") {
        const auto rec = orbit_returns_map(contraction_map(), interval(0.5, 1.0), v1(0.75), 1000);
        CHECK(rec.return_count == 0);
        CHECK_FALSE(rec.first_return.has_value());
    }
    SUBCASE("start point must lie in the set") {
        CHECK_THROWS_AS(orbit_returns_map(circle_rotation(0.25), interval(0.0, 0.3), v1(0.5), 10),
                        ValidationError);
        CHECK_THROWS_AS(orbit_returns_map(circle_rotation(0.25), interval(0.0, 0.3), v1(0.1), 0),
                        ValidationError);
    }
}

TEST_CASE("doubling map stays on its odd-denominator grid") {
    const PointMap f = doubling_map();
    Vec x = v1(0.123456789);
    std::size_t zeros = 0;
    for (int n = 0; n < 10'000; ++n) {
        x = f(x);
        CHECK(x[0] >= 0.0);
        CHECK(x[0] < 1.0);
        if (x[0] == 0.0) ++zeros;
    }
    CHECK(zeros == 0);
    // Agrees with 2x mod 1 up to the grid resolution.
    for (double y : {0.1, 0.3, 0.7, 0.999}) {
        const double expected = 2 * y - std::floor(2 * y);
        CHECK(std::abs(f(v1(y))[0] - expected) <= 1e-11);
    }
}

TEST_CASE("recurrence_experiment_map") {
    const Box unit = Box::unit(1);
    SUBCASE("doubling map") {
        const auto rep = recurrence_experiment_map(doubling_map(), interval(0.0, 0.1), unit, 500,
                                                   10'000, 1);
        CHECK(rep.records.size() == 500);
        CHECK(rep.returning_fraction == 1.0);
        REQUIRE(rep.mean_first_return.has_value());
    }
    SUBCASE("golden rotation returns within 13 steps") {
        const auto rep = recurrence_experiment_map(circle_rotation(kGoldenRotation),
                                                   interval(0.0, 0.1), unit, 500, 1000, 2);
        CHECK(rep.returning_fraction == 1.0);
        for (const auto& r : rep.records) {
            REQUIRE(r.first_return.has_value());
            CHECK(*r.first_return <= 13.0);
            CHECK(static_cast<std::size_t>(*r.first_return) ==
                  brute_first_return(r.start[0], kGoldenRotation, 0.0, 0.1, 1000));
        }
    }
    SUBCASE("contraction control") {
        const auto rep = recurrence_experiment_map(contraction_map(), interval(0.5, 1.0), unit, 200,
                                                   1000, 3);
        CHECK(rep.returning_fraction == 0.0);
        CHECK_FALSE(rep.mean_first_return.has_value());
    }
    SUBCASE("set of zero measure fails with a diagnostic") {
        CHECK_THROWS_AS(recurrence_experiment_map(circle_rotation(0.3), interval(2.0, 3.0), unit, 1,
                                                  10, 1),
                        SamplingError);
    }
    SUBCASE("record and report invariants") {
        const auto rep = recurrence_experiment_map(circle_rotation(0.3), interval(0.0, 0.2), unit,
                                                   100, 50, 4);
        std::size_t returning = 0;
        double sum = 0.0;
        for (const auto& r : rep.records) {
            CHECK(r.first_return.has_value() == (r.return_count > 0));
            CHECK(r.return_count <= 50);
            if (r.returned()) {
                ++returning;
                sum += *r.first_return;
            }
        }
        CHECK(rep.returning_fraction == static_cast<double>(returning) / 100.0);
        CHECK(*rep.mean_first_return == doctest::Approx(sum / static_cast<double>(returning)));
    }
}

TEST_CASE("recurrence reports are deterministic across worker counts") {
    const auto a = recurrence_experiment_map(doubling_map(), interval(0.0, 0.1), Box::unit(1), 300,
                                             2000, 8, 1);
    const auto b = recurrence_experiment_map(doubling_map(), interval(0.0, 0.1), Box::unit(1), 300,
                                             2000, 8, 8);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].start == b.records[i].start);
        CHECK(a.records[i].first_return == b.records[i].first_return);
        CHECK(a.records[i].return_count == b.records[i].return_count);
    }
    CHECK(a.set_measure_estimate == b.set_measure_estimate);
}

TEST_CASE("set measure estimate is consistent with estimate_volume_mc") {
    const Indicator set = disk(v2(1.0, 0.0), 0.3);
    const Box domain{{0.5, 1.5}, {-0.5, 0.5}};
    const auto sample = sample_set(set, domain, 400, 21);
    const auto mc = estimate_volume_mc(set, domain, sample.candidates, 21);
    // Same candidates, so the hit counts coincide.
    CHECK(sample.measure_estimate == doctest::Approx(mc.estimate));
    const auto independent = estimate_volume_mc(set, domain, 200'000, 21);
    CHECK(std::abs(sample.measure_estimate - independent.estimate) <=
          4.0 * std::hypot(independent.standard_error,
                           std::sqrt(sample.measure_estimate * (domain.volume() - sample.measure_estimate) /
                                     static_cast<double>(sample.candidates))));
}

TEST_CASE("recurrence_experiment_flow") {
    SUBCASE("harmonic oscillator returns after about one period") {
        const auto field = hamiltonian_vector_field(harmonic_oscillator(1.0, 1.0));
        const Box domain{{0.9, 1.1}, {-0.1, 0.1}};
        const auto rep = recurrence_experiment_flow(field, disk(v2(1.0, 0.0), 0.1), domain, 100,
                                                    6 * pi, 1e-2, 5);
        CHECK(rep.returning_fraction == 1.0);
        REQUIRE(rep.mean_first_return.has_value());
        CHECK(std::abs(*rep.mean_first_return - 2 * pi) <= 0.05 * 2 * pi);
    }
    SUBCASE("pendulum libration band") {
        // Energy band around E = 1 restricted to p > 0 so orbits leave and re-enter.
        const auto h = pendulum(1.0);
        const Indicator band = [h](const Vec& z) {
            const double e = h(z);
            return e >= 0.9 && e <= 1.1 && z[1] > 0.0;
        };
        const Box domain{{-pi, pi}, {0.0, 2.0}};
        const auto rep = recurrence_experiment_flow(hamiltonian_vector_field(h), band, domain, 50,
                                                    50.0, 1e-2, 6);
        CHECK(rep.returning_fraction == 1.0);
    }
    SUBCASE("damped oscillator spirals out of the annulus") {
        const Indicator annulus = [](const Vec& z) {
            const double r = z.norm();
            return r >= 0.9 && r <= 1.1;
        };
        const Box domain{{-1.1, 1.1}, {-1.1, 1.1}};
        const auto rep = recurrence_experiment_flow(damped_oscillator(0.5), annulus, domain, 100,
                                                    6 * pi, 1e-2, 7);
        CHECK(rep.returning_fraction <= 0.05);
    }
    SUBCASE("a return needs an exit first") {
        // Static field: the orbit never leaves, so it never returns.
        const VectorField still{2, [](const Vec&) -> Vec { return Vec::Zero(2); }, {}, {}, "still"};
        const auto rec = orbit_returns_flow(still, disk(v2(0.0, 0.0), 1.0), v2(0.1, 0.1), 5.0, 0.1);
        CHECK(rec.return_count == 0);
    }
}

TEST_CASE("return_count_growth") {
    const Indicator small = interval(0.0, 0.1);
    SUBCASE("identity") {
        const PointMap id{1, [](const Vec& x) { return x; }, "id"};
        CHECK(return_count_growth(id, small, v1(0.05), {10, 20, 40}) ==
              std::vector<std::size_t>{10, 20, 40});
    }
    SUBCASE("golden rotation counts follow horizon * mu(E)") {
        const auto counts = return_count_growth(circle_rotation(kGoldenRotation), small, v1(0.05),
                                                {1000, 2000, 4000});
        // Brute-force count.
        long double y = 0.05;
        std::size_t brute = 0;
        for (std::size_t n = 1; n <= 4000; ++n) {
            y += kGoldenRotation;
            y -= std::floor(y);
            if (y < 0.1) ++brute;
        }
        CHECK(counts.back() == brute);
        const std::vector<double> horizons{1000, 2000, 4000};
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(std::abs(static_cast<double>(counts[k]) - 0.1 * horizons[k]) <= 0.2 * 0.1 * horizons[k]);
    }
    SUBCASE("contraction") {
        CHECK(return_count_growth(contraction_map(), interval(0.5, 1.0), v1(0.75), {10, 20, 40}) ==
              std::vector<std::size_t>{0, 0, 0});
    }
    SUBCASE("monotone in the horizon") {
        for (std::size_t i = 0; i < 20; ++i) {
            const double x0 = 0.005 * static_cast<double>(i);
            const auto counts = return_count_growth(doubling_map(), small, v1(x0), {100, 200, 400, 800});
            CHECK(std::is_sorted(counts.begin(), counts.end()));
        }
    }
    SUBCASE("horizons must increase strictly") {
        CHECK_THROWS_AS(return_count_growth(circle_rotation(0.3), small, v1(0.05), {10, 10}),
                        ValidationError);
    }
    SUBCASE("flow version") {
        const auto field = hamiltonian_vector_field(harmonic_oscillator(1.0, 1.0));
        const auto counts = return_count_growth_flow(field, disk(v2(1.0, 0.0), 0.1), v2(1.0, 0.0),
                                                     {6 * pi, 12 * pi, 24 * pi}, 1e-2);
        CHECK(counts == std::vector<std::size_t>{3, 6, 12});
    }
}
