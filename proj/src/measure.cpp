#include "ergolab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

namespace {

// Fixed chunking keeps floating-point reductions identical for any worker count.
constexpr std::size_t kChunk = 4096;

constexpr std::size_t kMaxBallTries = 100000;

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw ValidationError("interval endpoints must be finite");
    if (lo > hi)
        throw ValidationError("interval requires lo <= hi, got [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + ")");
}

Box::Box(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    if (intervals_.empty()) throw ValidationError("box needs at least one interval");
}

Box Box::unit(std::size_t d) {
    return Box(std::vector<Interval>(d, Interval(0.0, 1.0)));
}

bool Box::contains(const Vec& x) const {
    if (static_cast<std::size_t>(x.size()) != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j)
        if (!intervals_[j].contains(x[static_cast<Eigen::Index>(j)])) return false;
    return true;
}

bool Box::contains(const Box& other) const {
    if (other.dim() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j) {
        const Interval& mine = intervals_[j];
        const Interval& theirs = other.intervals_[j];
        if (theirs.length() == 0.0) continue;
        if (theirs.lo() < mine.lo() || theirs.hi() > mine.hi()) return false;
    }
    return true;
}

double Box::volume() const {
    double v = 1.0;
    for (const auto& iv : intervals_) v *= iv.length();
    return v;
}

Vec Box::sample(SampleStream& rng) const {
    Vec x(static_cast<Eigen::Index>(dim()));
    for (std::size_t j = 0; j < dim(); ++j)
        x[static_cast<Eigen::Index>(j)] = rng.uniform(intervals_[j].lo(), intervals_[j].hi());
    return x;
}

double box_volume(const Box& b) { return b.volume(); }

Box cartesian_product(const Box& a, const Box& b) {
    std::vector<Interval> ivs = a.intervals();
    ivs.insert(ivs.end(), b.intervals().begin(), b.intervals().end());
    return Box(std::move(ivs));
}

std::optional<Box> intersect(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw ValidationError("intersect: dimension mismatch");
    std::vector<Interval> ivs;
    ivs.reserve(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) {
        const double lo = std::max(a[j].lo(), b[j].lo());
        const double hi = std::min(a[j].hi(), b[j].hi());
        if (!(lo < hi)) return std::nullopt;
        ivs.emplace_back(lo, hi);
    }
    return Box(std::move(ivs));
}

bool contains(const BoxUnion& set, const Vec& x) {
    return std::any_of(set.begin(), set.end(), [&](const Box& b) { return b.contains(x); });
}

SimpleFunction::SimpleFunction(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!std::isfinite(terms_[i].alpha))
            throw ValidationError("simple function coefficient must be finite");
        for (std::size_t j = 0; j < i; ++j) {
            if (terms_[i].support.dim() != terms_[j].support.dim())
                throw ValidationError("simple function supports differ in dimension");
            if (intersect(terms_[i].support, terms_[j].support))
                throw ValidationError("simple function supports " + std::to_string(j) +
                                      " and " + std::to_string(i) + " overlap");
        }
    }
}

double SimpleFunction::operator()(const Vec& x) const {
    for (const auto& t : terms_)
        if (t.support.contains(x)) return t.alpha;
    return 0.0;
}

double integrate_simple(const SimpleFunction& s) {
    double total = 0.0;
    for (const auto& t : s.terms()) total += t.alpha * box_volume(t.support);
    return total;
}

VolumeEstimate estimate_volume_mc(const Indicator& indicator, const Box& domain,
                                  std::size_t n, std::uint64_t seed, unsigned workers) {
    if (n == 0) throw ValidationError("estimate_volume_mc: n must be >= 1");

    std::vector<std::size_t> chunk_hits(chunk_count(n), 0);
    parallel_blocks(chunk_hits.size(), workers, [&](std::size_t cb, std::size_t ce) {
        for (std::size_t c = cb; c < ce; ++c) {
            const std::size_t end = std::min(n, (c + 1) * kChunk);
            std::size_t hits = 0;
            for (std::size_t i = c * kChunk; i < end; ++i) {
                SampleStream rng(seed, i);
                if (indicator(domain.sample(rng))) ++hits;
            }
            chunk_hits[c] = hits;
        }
    });

    std::size_t hits = 0;
    for (auto h : chunk_hits) hits += h;
    const double vol = domain.volume();
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return VolumeEstimate{p * vol, std::sqrt(p * (1.0 - p) / static_cast<double>(n)) * vol, n,
                          seed};
}

double density_ratio(const Vec& a, const Indicator& indicator, double eps, std::size_t n,
                     std::uint64_t seed) {
    if (!(eps > 0.0)) throw ValidationError("density_ratio: eps must be > 0");
    if (n == 0) throw ValidationError("density_ratio: n must be >= 1");
    if (a.size() == 0) throw ValidationError("density_ratio: empty point");

    const Eigen::Index d = a.size();
    std::size_t hits = 0;
    Vec x(d);
    for (std::size_t i = 0; i < n; ++i) {
        SampleStream rng(seed, i);
        // Rejection from the bounding cube of the ball.
        std::size_t tries = 0;
        for (;;) {
            for (Eigen::Index j = 0; j < d; ++j) x[j] = a[j] + eps * (2.0 * rng.uniform() - 1.0);
            if ((x - a).squaredNorm() < eps * eps) break;
            if (++tries == kMaxBallTries)
                throw SamplingError("density_ratio: ball rejection sampling did not converge");
        }
        if (indicator(x)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

InvarianceReport invariance_by_integrals(const PointMap& f,
                                         const std::vector<TestFunction>& test_functions,
                                         const Box& domain, std::size_t n, std::uint64_t seed,
                                         double k_sigma, unsigned workers) {
    if (test_functions.empty())
        throw ValidationError("invariance_by_integrals: test function list is empty");
    if (n == 0) throw ValidationError("invariance_by_integrals: n must be >= 1");
    if (!(k_sigma > 0.0)) throw ValidationError("invariance_by_integrals: k_sigma must be > 0");
    if (f.dim != domain.dim())
        throw ValidationError("invariance_by_integrals: map and domain dimensions differ");

    const std::size_t m = test_functions.size();
    // Per chunk and test function: sum phi(x), sum phi(f x), sum d, sum d^2.
    struct Sums {
        double lhs = 0, rhs = 0, diff = 0, diff_sq = 0;
    };
    const std::size_t chunks = chunk_count(n);
    std::vector<Sums> partial(chunks * m);

    parallel_blocks(chunks, workers, [&](std::size_t cb, std::size_t ce) {
        for (std::size_t c = cb; c < ce; ++c) {
            const std::size_t end = std::min(n, (c + 1) * kChunk);
            Sums* out = &partial[c * m];
            for (std::size_t i = c * kChunk; i < end; ++i) {
                SampleStream rng(seed, i);
                const Vec x = domain.sample(rng);
                const Vec fx = f(x);
                for (std::size_t k = 0; k < m; ++k) {
                    const double a = test_functions[k](x);
                    const double b = test_functions[k](fx);
                    const double d = a - b;
                    out[k].lhs += a;
                    out[k].rhs += b;
                    out[k].diff += d;
                    out[k].diff_sq += d * d;
                }
            }
        }
    });

    InvarianceReport report;
    report.k_sigma = k_sigma;
    report.pass = true;
    const double vol = domain.volume();
    const double nn = static_cast<double>(n);
    for (std::size_t k = 0; k < m; ++k) {
        Sums total;
        for (std::size_t c = 0; c < chunks; ++c) {
            total.lhs += partial[c * m + k].lhs;
            total.rhs += partial[c * m + k].rhs;
            total.diff += partial[c * m + k].diff;
            total.diff_sq += partial[c * m + k].diff_sq;
        }
        IntegralComparison cmp;
        cmp.lhs_integral = vol * total.lhs / nn;
        cmp.rhs_integral = vol * total.rhs / nn;
        cmp.discrepancy = std::abs(cmp.lhs_integral - cmp.rhs_integral);
        const double mean_d = total.diff / nn;
        const double var_d = std::max(0.0, total.diff_sq / nn - mean_d * mean_d);
        cmp.combined_mc_error = vol * std::sqrt(var_d / nn);
        if (!std::isfinite(cmp.lhs_integral) || !std::isfinite(cmp.rhs_integral))
            throw NumericalError("invariance_by_integrals: non-finite integral estimate");
        if (cmp.discrepancy > k_sigma * cmp.combined_mc_error) report.pass = false;
        report.per_test_function.push_back(cmp);
    }
    return report;
}

PreimageMeasures preimage_measures(const PointMap& f, const BoxUnion& set, const Box& domain,
                                   std::size_t grid_per_axis) {
    if (grid_per_axis < 2) throw ValidationError("preimage: grid_per_axis must be >= 2");
    if (f.dim != domain.dim()) throw ValidationError("preimage: map and domain dimensions differ");
    for (const auto& b : set)
        if (!domain.contains(b))
            throw ValidationError("preimage: set is not contained in the domain");

    const std::size_t d = domain.dim();
    std::size_t cells = 1;
    for (std::size_t j = 0; j < d; ++j) {
        if (cells > std::numeric_limits<std::size_t>::max() / grid_per_axis ||
            cells * grid_per_axis > (std::size_t{1} << 34))
            throw ValidationError("preimage: grid has too many cells");
        cells *= grid_per_axis;
    }

    const double g = static_cast<double>(grid_per_axis);
    std::vector<std::size_t> index(d, 0);
    Vec center(static_cast<Eigen::Index>(d));
    std::size_t in_set = 0, in_preimage = 0;
    for (std::size_t c = 0; c < cells; ++c) {
        for (std::size_t j = 0; j < d; ++j) {
            const Interval& iv = domain[j];
            center[static_cast<Eigen::Index>(j)] =
                iv.lo() + (static_cast<double>(index[j]) + 0.5) * iv.length() / g;
        }
        if (contains(set, center)) ++in_set;
        if (contains(set, f(center))) ++in_preimage;
        for (std::size_t j = 0; j < d; ++j) {
            if (++index[j] < grid_per_axis) break;
            index[j] = 0;
        }
    }

    const double cell_volume = domain.volume() / static_cast<double>(cells);
    double width = 0.0;
    for (const auto& iv : domain.intervals()) width = std::max(width, iv.length() / g);
    return PreimageMeasures{static_cast<double>(in_set) * cell_volume,
                            static_cast<double>(in_preimage) * cell_volume, width};
}

double preimage_measure_discrepancy(const PointMap& f, const BoxUnion& set, const Box& domain,
                                    std::size_t grid_per_axis) {
    const auto m = preimage_measures(f, set, domain, grid_per_axis);
    return std::abs(m.set_measure - m.preimage_measure);
}

}  // namespace ergolab
