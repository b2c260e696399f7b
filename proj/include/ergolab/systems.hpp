#pragma once

// Built-in fixtures: the damped oscillator (a non-conservative control field)
// and the circle maps used by the invariance and recurrence experiments.

#include <cstdint>

#include "ergolab/vector_field.hpp"

namespace ergolab {

/// (q, p)' = (p, -q - gamma p); divergence -gamma.
VectorField damped_oscillator(double gamma);

/// x -> x + alpha mod 1 on [0, 1).
PointMap circle_rotation(double alpha);

/// (sqrt(5) - 1) / 2
inline constexpr double kGoldenRotation = 0.6180339887498948482;

/// Odd prime modulus for the doubling map; 2 is a primitive root mod P, so
/// the doubling map permutes the grid {k / P} in a single cycle of length P - 1.
inline constexpr std::uint64_t kDoublingModulus = 1099511627581ULL;

/// x -> 2x mod 1 on [0, 1), evaluated exactly on the grid {k / P}: the input
/// is rounded to the nearest grid point (an error below 1e-12) and the image
/// is (2k mod P) / P. Rationals with odd denominator are invariant under
/// doubling, so unlike plain floating point (where every orbit collapses to 0
/// within 53 steps) orbits stay on a long periodic cycle.
PointMap doubling_map();

/// x -> factor * x; factor = 0.5 is the non-invariant control.
PointMap contraction_map(double factor = 0.5);

}  // namespace ergolab
