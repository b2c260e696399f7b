#pragma once

// Divergence, Jacobians and the flow's Jacobian determinant computed two ways:
// by integrating the variational equation, and by exponentiating the time
// integral of the divergence along the orbit (Liouville's formula).

#include <vector>

#include "ergolab/vector_field.hpp"

namespace ergolab {

/// Central-difference step 1e-5 * max(1, |x|_inf).
double default_fd_step(const Vec& x);

/// Analytic divergence when the field carries one, otherwise central
/// differences with the default step.
double divergence(const VectorField& field, const Vec& x);
/// Analytic divergence when present, otherwise central differences with step h.
double divergence(const VectorField& field, const Vec& x, double h);
/// Always central differences: sum_j (F_j(x + h e_j) - F_j(x - h e_j)) / 2h.
double divergence_fd(const VectorField& field, const Vec& x, double h);

/// Central-difference Jacobian of a field, column j = dF/dx_j.
Mat jacobian_fd(const VectorField& field, const Vec& x, double h);
/// Analytic Jacobian when present, otherwise jacobian_fd with the default step.
Mat jacobian(const VectorField& field, const Vec& x);

/// det D(phi^t)(x) by RK4 on the augmented system x' = F(x), J' = DF(x) J,
/// J(0) = I.
double flow_det_variational(const VectorField& field, const Vec& x, double t, double dt);

/// exp of the integral of div F along the RK4 orbit; composite Simpson when
/// the number of uniform intervals is even, trapezoid otherwise.
double flow_det_liouville(const VectorField& field, const Vec& x, double t, double dt);

struct DetComparison {
    double det_variational = 1.0;
    double det_liouville = 1.0;
    double t = 0.0;
};

DetComparison compare_flow_dets(const VectorField& field, const Vec& x, double t, double dt);

/// Composite Simpson / trapezoid over samples spaced by dt, plus a trailing
/// trapezoid panel of width `partial` when partial > 0.
double integrate_samples(const std::vector<double>& values, double dt, double partial);

/// Determinant of the central-difference Jacobian of a map; h > 0.
double map_jacobian_det(const PointMap& f, const Vec& x, double h);
double map_jacobian_det(const PointMap& f, const Vec& x);

}  // namespace ergolab
