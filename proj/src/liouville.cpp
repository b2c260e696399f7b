#include "ergolab/liouville.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/errors.hpp"
#include "ergolab/integrators.hpp"

namespace ergolab {

namespace {

void require_positive_step(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("finite-difference step must be > 0");
}

void require_nonnegative_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("flow time must be finite and >= 0");
}

template <class F>
Mat central_jacobian(F&& eval, const Vec& x, double h) {
    require_positive_step(h);
    const Eigen::Index d = x.size();
    Mat jac(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        Vec plus = x, minus = x;
        plus[j] += h;
        minus[j] -= h;
        const Vec fp = eval(plus);
        const Vec fm = eval(minus);
        if (fp.size() != d || fm.size() != d)
            throw ValidationError("finite-difference Jacobian: output dimension mismatch");
        jac.col(j) = (fp - fm) / (2.0 * h);
    }
    return jac;
}

}  // namespace

double default_fd_step(const Vec& x) {
    const double inf_norm = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
    return 1e-5 * std::max(1.0, inf_norm);
}

double divergence(const VectorField& field, const Vec& x) {
    return divergence(field, x, default_fd_step(x));
}

double divergence(const VectorField& field, const Vec& x, double h) {
    if (field.has_divergence()) {
        const double div = field.divergence_analytic(x);
        if (!std::isfinite(div)) throw NonFiniteStateError("divergence: non-finite value");
        return div;
    }
    return divergence_fd(field, x, h);
}

double divergence_fd(const VectorField& field, const Vec& x, double h) {
    require_positive_step(h);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        Vec plus = x, minus = x;
        plus[j] += h;
        minus[j] -= h;
        sum += (field(plus)[j] - field(minus)[j]) / (2.0 * h);
    }
    if (!std::isfinite(sum)) throw NonFiniteStateError("divergence: non-finite value");
    return sum;
}

Mat jacobian_fd(const VectorField& field, const Vec& x, double h) {
    return central_jacobian([&](const Vec& y) { return field(y); }, x, h);
}

Mat jacobian(const VectorField& field, const Vec& x) {
    if (field.has_jacobian()) return field.jacobian_analytic(x);
    return jacobian_fd(field, x, default_fd_step(x));
}

double flow_det_variational(const VectorField& field, const Vec& x, double t, double dt) {
    require_nonnegative_time(t);
    if (t == 0.0) return 1.0;

    const auto d = static_cast<Eigen::Index>(field.dim);
    VectorField augmented;
    augmented.dim = field.dim + field.dim * field.dim;
    augmented.label = field.label + " (variational)";
    augmented.eval = [&field, d](const Vec& y) {
        const Vec state = y.head(d);
        const Eigen::Map<const Mat> J(y.data() + d, d, d);
        Vec out(y.size());
        out.head(d) = field(state);
        Eigen::Map<Mat>(out.data() + d, d, d) = jacobian(field, state) * J;
        return out;
    };

    Vec y(augmented.dim);
    y.head(d) = x;
    Eigen::Map<Mat>(y.data() + d, d, d).setIdentity();
    const Vec end = flow_to(augmented, y, t, dt);
    const double det = Eigen::Map<const Mat>(end.data() + d, d, d).determinant();
    if (!std::isfinite(det)) throw NonFiniteStateError("variational determinant is not finite");
    return det;
}

double integrate_samples(const std::vector<double>& values, double dt, double partial) {
    const std::size_t total = values.size();
    if (total == 0) return 0.0;
    const std::size_t uniform = partial > 0.0 ? total - 1 : total;  // samples on the uniform grid
    double sum = 0.0;
    if (uniform >= 2) {
        const std::size_t intervals = uniform - 1;
        if (intervals % 2 == 0) {
            double acc = values[0] + values[intervals];
            for (std::size_t i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * values[i];
            sum = acc * dt / 3.0;
        } else {
            double acc = 0.5 * (values[0] + values[intervals]);
            for (std::size_t i = 1; i < intervals; ++i) acc += values[i];
            sum = acc * dt;
        }
    }
    if (partial > 0.0 && total >= 2)
        sum += 0.5 * partial * (values[total - 2] + values[total - 1]);
    return sum;
}

double flow_det_liouville(const VectorField& field, const Vec& x, double t, double dt) {
    require_nonnegative_time(t);
    if (t == 0.0) return 1.0;
    const Trajectory traj = integrate(field, x, t, dt);
    std::vector<double> div;
    div.reserve(traj.size());
    for (const auto& z : traj.states) div.push_back(divergence(field, z));
    const double det = std::exp(
        integrate_samples(div, dt, traj.partial_final_step ? traj.final_step : 0.0));
    if (!std::isfinite(det)) throw NonFiniteStateError("Liouville determinant is not finite");
    return det;
}

DetComparison compare_flow_dets(const VectorField& field, const Vec& x, double t, double dt) {
    return DetComparison{flow_det_variational(field, x, t, dt),
                         flow_det_liouville(field, x, t, dt), t};
}

double map_jacobian_det(const PointMap& f, const Vec& x, double h) {
    const Mat jac = central_jacobian([&](const Vec& y) { return f(y); }, x, h);
    for (Eigen::Index j = 0; j < jac.cols(); ++j)
        if (!all_finite(jac.col(j)))
            throw NumericalError("map_jacobian_det: column " + std::to_string(j) +
                                 " of the difference stencil is not finite");
    return jac.determinant();
}

double map_jacobian_det(const PointMap& f, const Vec& x) {
    return map_jacobian_det(f, x, default_fd_step(x));
}

}  // namespace ergolab
