#pragma once

// Empirical Poincare recurrence: start points sampled uniformly from a set E,
// orbits followed to a finite horizon, returns to E recorded.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ergolab/measure.hpp"
#include "ergolab/vector_field.hpp"

namespace ergolab {

/// For maps `first_return` and `horizon` hold step counts; for flows they
/// hold times.
struct ReturnRecord {
    Vec start;
    std::optional<double> first_return;
    std::size_t return_count = 0;
    double horizon = 0.0;

    bool returned() const { return return_count > 0; }
};

struct RecurrenceReport {
    std::vector<ReturnRecord> records;
    double returning_fraction = 0.0;
    std::optional<double> mean_first_return;  // over returning records only
    double set_measure_estimate = 0.0;
    std::uint64_t seed = 0;
    std::size_t candidates_drawn = 0;  // domain samples used to find the start points
};

/// Counts every n in [1, horizon] with f^n(x0) in E; the least such n is the
/// first return. Throws ValidationError if x0 is not in E.
ReturnRecord orbit_returns_map(const PointMap& f, const Indicator& set, const Vec& x0,
                               std::size_t horizon);

/// RK4 orbit sampled every dt up to t_horizon. A return is an entry into E
/// from outside, so an orbit must leave E before it can come back.
ReturnRecord orbit_returns_flow(const VectorField& field, const Indicator& set, const Vec& x0,
                                double t_horizon, double dt);

struct SetSample {
    std::vector<Vec> points;
    std::size_t candidates = 0;
    double measure_estimate = 0.0;
};

/// Uniform points of E by rejection: candidate i is domain.sample of
/// SampleStream(seed, i), the same stream estimate_volume_mc uses, and the
/// accepted candidates in index order become the start points. Throws
/// SamplingError after 10^6 consecutive rejections.
SetSample sample_set(const Indicator& set, const Box& domain, std::size_t n_points,
                     std::uint64_t seed);

RecurrenceReport recurrence_experiment_map(const PointMap& f, const Indicator& set,
                                           const Box& domain, std::size_t n_points,
                                           std::size_t horizon, std::uint64_t seed,
                                           unsigned workers = 1);

RecurrenceReport recurrence_experiment_flow(const VectorField& field, const Indicator& set,
                                            const Box& domain, std::size_t n_points,
                                            double t_horizon, double dt, std::uint64_t seed,
                                            unsigned workers = 1);

/// Return counts of one orbit at each horizon; horizons strictly increasing.
std::vector<std::size_t> return_count_growth(const PointMap& f, const Indicator& set,
                                             const Vec& x0,
                                             const std::vector<std::size_t>& horizons);

std::vector<std::size_t> return_count_growth_flow(const VectorField& field, const Indicator& set,
                                                  const Vec& x0,
                                                  const std::vector<double>& horizons, double dt);

}  // namespace ergolab
