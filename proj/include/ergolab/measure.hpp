#pragma once

// Lebesgue measure on boxes, simple-function integrals, Monte Carlo volume
// and integral estimates, and the two invariance tests for point maps.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/rng.hpp"
#include "ergolab/vector_field.hpp"

namespace ergolab {

/// Closed-open interval [lo, hi).
class Interval {
public:
    Interval(double lo, double hi);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double length() const { return hi_ - lo_; }
    bool contains(double x) const { return lo_ <= x && x < hi_; }

private:
    double lo_;
    double hi_;
};

/// Product of closed-open intervals in R^d, d >= 1.
class Box {
public:
    explicit Box(std::vector<Interval> intervals);
    Box(std::initializer_list<Interval> intervals)
        : Box(std::vector<Interval>(intervals)) {}

    /// [0, 1)^d
    static Box unit(std::size_t d);

    std::size_t dim() const { return intervals_.size(); }
    const Interval& operator[](std::size_t j) const { return intervals_[j]; }
    const std::vector<Interval>& intervals() const { return intervals_; }

    bool contains(const Vec& x) const;
    bool contains(const Box& other) const;
    double volume() const;

    /// Uniform point, drawing one coordinate per axis in order.
    Vec sample(SampleStream& rng) const;

private:
    std::vector<Interval> intervals_;
};

double box_volume(const Box& b);

/// A x B in R^(d_a + d_b).
Box cartesian_product(const Box& a, const Box& b);

/// Intersection, or nullopt when it has zero volume.
std::optional<Box> intersect(const Box& a, const Box& b);

/// Finite union of boxes; membership is "in any piece".
using BoxUnion = std::vector<Box>;
bool contains(const BoxUnion& set, const Vec& x);

/// sum_j alpha_j * chi_{A_j} with pairwise disjoint boxes A_j.
class SimpleFunction {
public:
    struct Term {
        double alpha;
        Box support;
    };

    SimpleFunction() = default;
    /// Throws ValidationError when two supports overlap with positive volume
    /// or dimensions disagree.
    explicit SimpleFunction(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    double operator()(const Vec& x) const;

private:
    std::vector<Term> terms_;
};

double integrate_simple(const SimpleFunction& s);

struct VolumeEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;

    bool operator==(const VolumeEstimate&) const = default;
};

/// Hit-or-miss estimate of the measure of {x in domain : indicator(x)}.
/// Sample i is drawn from SampleStream(seed, i), so the result is independent
/// of `workers`.
VolumeEstimate estimate_volume_mc(const Indicator& indicator, const Box& domain,
                                  std::size_t n, std::uint64_t seed,
                                  unsigned workers = 1);

/// Fraction of n uniform samples of the Euclidean ball B(a, eps) that fall in
/// the set; estimates mu(B(a,eps) n A) / mu(B(a,eps)).
double density_ratio(const Vec& a, const Indicator& indicator, double eps,
                     std::size_t n, std::uint64_t seed);

using TestFunction = std::function<double(const Vec&)>;

struct IntegralComparison {
    double lhs_integral = 0.0;      // integral of phi
    double rhs_integral = 0.0;      // integral of phi o f
    double discrepancy = 0.0;       // |lhs - rhs|
    double combined_mc_error = 0.0; // standard error of the paired difference
};

struct InvarianceReport {
    std::vector<IntegralComparison> per_test_function;
    double k_sigma = 4.0;
    bool pass = false;
};

/// Compares integral(phi) with integral(phi o f) over the domain for each test
/// function, using one shared sample stream for both sides.
InvarianceReport invariance_by_integrals(const PointMap& f,
                                         const std::vector<TestFunction>& test_functions,
                                         const Box& domain, std::size_t n,
                                         std::uint64_t seed, double k_sigma = 4.0,
                                         unsigned workers = 1);

struct PreimageMeasures {
    double set_measure = 0.0;       // mu(E) by cell counting
    double preimage_measure = 0.0;  // mu(f^-1 E) by cell counting
    double cell_width = 0.0;        // largest cell edge
};

/// Grid estimates of mu(E) and mu(f^-1(E)): each cell of a uniform
/// grid_per_axis^d partition of the domain is counted by its center.
PreimageMeasures preimage_measures(const PointMap& f, const BoxUnion& set,
                                   const Box& domain, std::size_t grid_per_axis);

/// |mu(E) - mu(f^-1(E))| from preimage_measures.
double preimage_measure_discrepancy(const PointMap& f, const BoxUnion& set,
                                    const Box& domain, std::size_t grid_per_axis);

}  // namespace ergolab
