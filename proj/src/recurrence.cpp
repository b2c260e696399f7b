#include "ergolab/recurrence.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/errors.hpp"
#include "ergolab/integrators.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

namespace {

constexpr std::size_t kMaxConsecutiveRejections = 1'000'000;

// Entry times of a sampled RK4 orbit into the set (outside -> inside).
std::vector<double> flow_entry_times(const VectorField& field, const Indicator& set,
                                     const Vec& x0, double t_horizon, double dt) {
    const StepPlan plan = plan_steps(t_horizon, dt);
    std::vector<double> entries;
    Vec z = x0;
    bool inside = true;
    for (std::size_t k = 0; k < plan.total_steps(); ++k) {
        const bool partial = k == plan.full_steps;
        try {
            z = rk4_step(field, z, partial ? plan.partial : dt);
        } catch (const NonFiniteStateError&) {
            throw NonFiniteStateError("recurrence flow: non-finite state", k + 1);
        }
        const bool now_inside = set(z);
        if (now_inside && !inside)
            entries.push_back(partial ? t_horizon : static_cast<double>(k + 1) * dt);
        inside = now_inside;
    }
    return entries;
}

RecurrenceReport summarize(std::vector<ReturnRecord> records, const SetSample& sample,
                           std::uint64_t seed) {
    RecurrenceReport report;
    report.seed = seed;
    report.set_measure_estimate = sample.measure_estimate;
    report.candidates_drawn = sample.candidates;
    std::size_t returning = 0;
    double sum_first = 0.0;
    for (const auto& r : records) {
        if (r.returned()) {
            ++returning;
            sum_first += *r.first_return;
        }
    }
    report.returning_fraction =
        records.empty() ? 0.0 : static_cast<double>(returning) / static_cast<double>(records.size());
    if (returning > 0) report.mean_first_return = sum_first / static_cast<double>(returning);
    report.records = std::move(records);
    return report;
}

void require_in_set(const Indicator& set, const Vec& x0) {
    if (!set(x0)) throw ValidationError("recurrence: start point is not in the set");
}

}  // namespace

ReturnRecord orbit_returns_map(const PointMap& f, const Indicator& set, const Vec& x0,
                               std::size_t horizon) {
    if (horizon == 0) throw ValidationError("orbit_returns_map: horizon must be >= 1");
    require_in_set(set, x0);
    ReturnRecord rec;
    rec.start = x0;
    rec.horizon = static_cast<double>(horizon);
    Vec x = x0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        x = f(x);
        if (!all_finite(x)) throw NonFiniteStateError("recurrence map: non-finite iterate", n);
        if (set(x)) {
            if (!rec.first_return) rec.first_return = static_cast<double>(n);
            ++rec.return_count;
        }
    }
    return rec;
}

ReturnRecord orbit_returns_flow(const VectorField& field, const Indicator& set, const Vec& x0,
                                double t_horizon, double dt) {
    require_in_set(set, x0);
    const auto entries = flow_entry_times(field, set, x0, t_horizon, dt);
    ReturnRecord rec;
    rec.start = x0;
    rec.horizon = t_horizon;
    rec.return_count = entries.size();
    if (!entries.empty()) rec.first_return = entries.front();
    return rec;
}

SetSample sample_set(const Indicator& set, const Box& domain, std::size_t n_points,
                     std::uint64_t seed) {
    if (n_points == 0) throw ValidationError("recurrence: n_points must be >= 1");
    SetSample out;
    out.points.reserve(n_points);
    std::size_t since_last_hit = 0;
    while (out.points.size() < n_points) {
        SampleStream rng(seed, out.candidates++);
        Vec x = domain.sample(rng);
        if (set(x)) {
            out.points.push_back(std::move(x));
            since_last_hit = 0;
        } else if (++since_last_hit >= kMaxConsecutiveRejections) {
            throw SamplingError("recurrence: " + std::to_string(kMaxConsecutiveRejections) +
                                " consecutive rejections without a point of the set; "
                                "its measure in the domain is zero or too small");
        }
    }
    out.measure_estimate = static_cast<double>(n_points) /
                           static_cast<double>(out.candidates) * domain.volume();
    return out;
}

RecurrenceReport recurrence_experiment_map(const PointMap& f, const Indicator& set,
                                           const Box& domain, std::size_t n_points,
                                           std::size_t horizon, std::uint64_t seed,
                                           unsigned workers) {
    if (f.dim != domain.dim()) throw ValidationError("recurrence: map and domain dimensions differ");
    if (horizon == 0) throw ValidationError("recurrence: horizon must be >= 1");
    const SetSample sample = sample_set(set, domain, n_points, seed);
    std::vector<ReturnRecord> records(n_points);
    parallel_blocks(n_points, workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            records[i] = orbit_returns_map(f, set, sample.points[i], horizon);
    });
    return summarize(std::move(records), sample, seed);
}

RecurrenceReport recurrence_experiment_flow(const VectorField& field, const Indicator& set,
                                            const Box& domain, std::size_t n_points,
                                            double t_horizon, double dt, std::uint64_t seed,
                                            unsigned workers) {
    if (field.dim != domain.dim())
        throw ValidationError("recurrence: field and domain dimensions differ");
    plan_steps(t_horizon, dt);
    const SetSample sample = sample_set(set, domain, n_points, seed);
    std::vector<ReturnRecord> records(n_points);
    parallel_blocks(n_points, workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            records[i] = orbit_returns_flow(field, set, sample.points[i], t_horizon, dt);
    });
    return summarize(std::move(records), sample, seed);
}

std::vector<std::size_t> return_count_growth(const PointMap& f, const Indicator& set,
                                             const Vec& x0,
                                             const std::vector<std::size_t>& horizons) {
    if (horizons.empty()) throw ValidationError("return_count_growth: no horizons");
    if (horizons.front() == 0) throw ValidationError("return_count_growth: horizons must be >= 1");
    if (!std::is_sorted(horizons.begin(), horizons.end(), std::less_equal<>{}))
        throw ValidationError("return_count_growth: horizons must be strictly increasing");
    require_in_set(set, x0);

    std::vector<std::size_t> counts;
    counts.reserve(horizons.size());
    Vec x = x0;
    std::size_t count = 0;
    std::size_t n = 0;
    for (std::size_t h : horizons) {
        for (; n < h; ++n) {
            x = f(x);
            if (!all_finite(x)) throw NonFiniteStateError("recurrence map: non-finite iterate", n + 1);
            if (set(x)) ++count;
        }
        counts.push_back(count);
    }
    return counts;
}

std::vector<std::size_t> return_count_growth_flow(const VectorField& field, const Indicator& set,
                                                  const Vec& x0,
                                                  const std::vector<double>& horizons, double dt) {
    if (horizons.empty()) throw ValidationError("return_count_growth: no horizons");
    if (!std::is_sorted(horizons.begin(), horizons.end(), std::less_equal<>{}))
        throw ValidationError("return_count_growth: horizons must be strictly increasing");
    require_in_set(set, x0);
    const auto entries = flow_entry_times(field, set, x0, horizons.back(), dt);
    std::vector<std::size_t> counts;
    counts.reserve(horizons.size());
    for (double h : horizons) {
        const auto upto = std::upper_bound(entries.begin(), entries.end(), h + 1e-9 * dt);
        counts.push_back(static_cast<std::size_t>(upto - entries.begin()));
    }
    return counts;
}

}  // namespace ergolab
