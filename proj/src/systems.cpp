#include "ergolab/systems.hpp"

#include <cmath>

#include "ergolab/errors.hpp"

namespace ergolab {

VectorField damped_oscillator(double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw ValidationError("damped oscillator: gamma must be finite and >= 0");
    VectorField f;
    f.dim = 2;
    f.label = "damped";
    f.eval = [gamma](const Vec& z) {
        Vec out(2);
        out << z[1], -z[0] - gamma * z[1];
        return out;
    };
    f.divergence_analytic = [gamma](const Vec&) { return -gamma; };
    f.jacobian_analytic = [gamma](const Vec&) {
        Mat jac(2, 2);
        jac << 0.0, 1.0, -1.0, -gamma;
        return jac;
    };
    return f;
}

PointMap circle_rotation(double alpha) {
    if (!std::isfinite(alpha)) throw ValidationError("rotation: alpha must be finite");
    PointMap f;
    f.dim = 1;
    f.label = "rotation";
    f.eval = [alpha](const Vec& x) {
        const double y = x[0] + alpha;
        double r = y - std::floor(y);
        if (r >= 1.0) r = 0.0;
        return Vec::Constant(1, r);
    };
    return f;
}

PointMap doubling_map() {
    PointMap f;
    f.dim = 1;
    f.label = "doubling";
    f.eval = [](const Vec& x) {
        constexpr auto P = kDoublingModulus;
        if (!std::isfinite(x[0])) return Vec::Constant(1, x[0]);
        const double frac = x[0] - std::floor(x[0]);
        auto k = static_cast<std::uint64_t>(std::llround(frac * static_cast<double>(P)));
        if (k >= P) k -= P;
        const std::uint64_t image = (2 * k) % P;
        return Vec::Constant(1, static_cast<double>(image) / static_cast<double>(P));
    };
    return f;
}

PointMap contraction_map(double factor) {
    if (!(factor > 0.0 && factor < 1.0))
        throw ValidationError("contraction: factor must lie in (0, 1)");
    PointMap f;
    f.dim = 1;
    f.label = "contraction";
    f.eval = [factor](const Vec& x) -> Vec { return factor * x; };
    return f;
}

}  // namespace ergolab
