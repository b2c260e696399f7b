#include "experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "emit.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/hamiltonian.hpp"
#include "ergolab/integrators.hpp"
#include "ergolab/liouville.hpp"
#include "ergolab/measure.hpp"
#include "ergolab/recurrence.hpp"
#include "registry.hpp"

namespace ergolab::cli {

namespace {

constexpr double pi = std::numbers::pi;
constexpr unsigned kMaxWorkers = 256;

std::string short_number(double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
    return ec == std::errc{} ? std::string(buf.data(), end) : "?";
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

unsigned read_workers(Params& params) {
    const auto w = params.positive_integer("workers", 1);
    if (w > kMaxWorkers) params.fail("workers", "must be <= " + std::to_string(kMaxWorkers));
    return static_cast<unsigned>(w);
}

Scheme read_scheme(Params& params, const BuiltSystem& sys) {
    const std::string name = params.text("scheme", "rk4");
    Scheme s;
    try {
        s = parse_scheme(name);
    } catch (const ValidationError&) {
        params.fail("scheme", "must be one of rk4, symplectic_euler, leapfrog");
    }
    if (!sys.hamiltonian && s != Scheme::rk4)
        params.fail("scheme", "must be rk4 for a non-Hamiltonian field");
    return s;
}

void check_steps(Params& params, double t_final, double dt) {
    try {
        plan_steps(t_final, dt);
    } catch (const ValidationError& e) {
        params.fail("dt", std::string("is inconsistent with the time span: ") + e.what());
    }
}

std::vector<double> default_energy_levels(const BuiltSystem& sys) {
    if (sys.info->key == "pendulum") return {1.0 * sys.g_over_L, 2.0 * sys.g_over_L, 3.0 * sys.g_over_L};
    return {0.5, 1.0, 2.0};
}

// One natural period for the harmonic oscillator, otherwise a fixed span.
double default_span(const BuiltSystem& sys) { return sys.omega > 0.0 ? 2.0 * pi / sys.omega : 20.0; }

Vec phase(double q, double p) {
    Vec z(2);
    z << q, p;
    return z;
}

double state_energy(const BuiltSystem& sys, const Vec& z) {
    if (sys.hamiltonian) return energy(*sys.hamiltonian, z);
    return 0.5 * z.squaredNorm();  // damped oscillator: the undamped energy
}

// ---------------------------------------------------------------- portrait

PreparedRun prepare_portrait(const BuiltSystem& sys, Params& params) {
    const auto levels = params.reals("E_levels", default_energy_levels(sys));
    for (double e : levels)
        if (!(e > 0.0)) params.fail("E_levels", "entries must be > 0");
    const double dt = params.positive("dt", 1e-3);
    const double t_final = params.positive("t_final", default_span(sys));
    check_steps(params, t_final, dt);
    const Scheme scheme = read_scheme(params, sys);
    const double tolerance = params.positive("tolerance", 1e-6);
    const unsigned workers = read_workers(params);
    // CSV keeps every stride-th sample plus the last; drift uses all of them.
    const std::size_t stride = params.positive_integer("stride", 10);

    // Start on q = 0 where V = 0, so p = sqrt(2 m E). Non-librating pendulum
    // levels also get the p < 0 branch.
    std::vector<PhasePoint> ics;
    std::vector<std::string> labels;
    for (double e : levels) {
        const double p = std::sqrt(2.0 * sys.mass * e);
        ics.emplace_back(0.0, p);
        labels.push_back("E = " + short_number(e));
        if (sys.info->key == "pendulum" &&
            classify_pendulum_orbit(e, 1e-9, sys.g_over_L) != OrbitClass::libration) {
            ics.emplace_back(0.0, -p);
            labels.push_back("E = " + short_number(e) + " (p < 0)");
        }
    }

    return {params.resolved(), [=]() {
                const SeparableHamiltonian& h = *sys.hamiltonian;
                const PhasePortrait portrait = phase_portrait(h, ics, t_final, dt, scheme, workers);
                if (portrait.orbits.empty())
                    throw NumericalError("portrait: every orbit failed; first: " +
                                         portrait.failures.front().message);

                CsvTable csv({"orbit", "E", "t", "q1", "p1", "H", "q1_wrapped"});
                SvgPlot plot;
                plot.title = sys.info->key + " phase portrait";
                plot.x_label = h.angular ? "theta (wrapped)" : "q";
                plot.y_label = "p";
                json orbits = json::array();
                double max_drift = 0.0;
                for (const auto& o : portrait.orbits) {
                    double drift = 0.0;
                    for (std::size_t i = 0; i < o.t.size(); ++i) {
                        const double hv = h(PhasePoint(o.q[i], o.p[i]));
                        drift = std::max(drift, std::abs(hv - o.energy));
                        if (i % stride != 0 && i + 1 != o.t.size()) continue;
                        csv.add_row({CsvTable::cell(o.source), CsvTable::cell(o.energy),
                                     CsvTable::cell(o.t[i]), CsvTable::cell(o.q[i]),
                                     CsvTable::cell(o.p[i]), CsvTable::cell(hv),
                                     CsvTable::cell(o.q_wrapped[i])});
                    }
                    max_drift = std::max(max_drift, drift);
                    plot.series.push_back(
                        {labels[o.source], split_at_jumps(o.q_wrapped, o.p, h.angular ? pi : INFINITY)});
                    json entry = {{"orbit", o.source}, {"E", o.energy}, {"energy_drift", drift},
                                  {"samples", o.t.size()}};
                    if (sys.info->key == "pendulum")
                        entry["class"] = to_string(classify_pendulum_orbit(o.energy, 1e-9, sys.g_over_L));
                    orbits.push_back(entry);
                }
                json failures = json::array();
                for (const auto& f : portrait.failures)
                    failures.push_back({{"orbit", f.source}, {"message", f.message}});

                RunResult r;
                r.artifacts = {{".csv", csv.str()}, {".svg", render_svg(plot)}};
                r.summary = {{"orbits", orbits}, {"failures", failures}, {"max_energy_drift", max_drift}};
                r.check_passed = portrait.failures.empty() && max_drift <= tolerance;
                return r;
            }};
}

// ---------------------------------------------------------------- simulate

PreparedRun prepare_simulate(const BuiltSystem& sys, Params& params) {
    // Harmonic runs may instead start on the closed-form solution
    // q = A cos(omega (t - delta)), which is then tracked as a reference.
    const bool closed_form = sys.info->key == "harmonic" && (params.has("A") || params.has("delta"));
    std::optional<std::pair<double, double>> amplitude_phase;
    double q0 = 1.0, p0 = 0.0;
    if (closed_form) {
        if (params.has("q0") || params.has("p0")) params.fail("A", "cannot be combined with q0/p0");
        if (sys.mass != 1.0) params.fail("A", "requires m = 1");
        amplitude_phase = {params.real("A", 1.0), params.real("delta", 0.0)};
        const PhasePoint start = harmonic_exact(amplitude_phase->first, amplitude_phase->second, sys.omega, 0.0);
        q0 = start.q[0];
        p0 = start.p[0];
    } else {
        q0 = params.real("q0", 1.0);
        p0 = params.real("p0", 0.0);
    }
    const double dt = params.positive("dt", 1e-3);
    const double t_final = params.positive("t_final", 10.0);
    check_steps(params, t_final, dt);
    const Scheme scheme = read_scheme(params, sys);
    const double tolerance = params.positive("tolerance", 1e-6);

    return {params.resolved(), [=]() {
                const Vec z0 = phase(q0, p0);
                const Trajectory traj = sys.hamiltonian
                                            ? integrate(*sys.hamiltonian, z0, t_final, dt, scheme)
                                            : integrate(sys.field, z0, t_final, dt);
                CsvTable csv({"t", "q1", "p1", "H"});
                const double h0 = state_energy(sys, z0);
                double drift = 0.0, max_increase = 0.0, previous = h0, exact_error = 0.0;
                for (std::size_t i = 0; i < traj.size(); ++i) {
                    const Vec& z = traj.states[i];
                    const double hv = state_energy(sys, z);
                    if (amplitude_phase) {
                        const auto [a, delta] = *amplitude_phase;
                        exact_error = std::max(
                            exact_error, (z - harmonic_exact(a, delta, sys.omega, traj.times[i]).flat()).lpNorm<Eigen::Infinity>());
                    }
                    drift = std::max(drift, std::abs(hv - h0));
                    max_increase = std::max(max_increase, hv - previous);
                    previous = hv;
                    csv.add_row({CsvTable::cell(traj.times[i]), CsvTable::cell(z[0]), CsvTable::cell(z[1]),
                                 CsvTable::cell(hv)});
                }
                RunResult r;
                r.artifacts = {{".csv", csv.str()}};
                r.summary = {{"scheme", to_string(scheme)},
                             {"steps", traj.size() - 1},
                             {"H_initial", h0},
                             {"H_final", state_energy(sys, traj.back())},
                             {"energy_drift", drift}};
                if (amplitude_phase) {
                    r.summary["max_error_vs_closed_form"] = exact_error;
                    r.check_passed = drift <= tolerance && exact_error <= tolerance;
                } else if (sys.hamiltonian) {
                    r.check_passed = drift <= tolerance;
                } else {
                    // Dissipative: energy may only go down.
                    r.summary["max_energy_increase"] = max_increase;
                    r.check_passed = max_increase <= tolerance;
                }
                return r;
            }};
}

// ---------------------------------------------------------------- liouville

PreparedRun prepare_liouville(const BuiltSystem& sys, Params& params) {
    const double q0 = params.real("q0", 1.0);
    const double p0 = params.real("p0", 0.0);
    const auto times = params.reals("times", {1.0, 2.0, 5.0});
    const double dt = params.positive("dt", 1e-3);
    for (double t : times) {
        if (!(t > 0.0)) params.fail("times", "entries must be > 0");
        check_steps(params, t, dt);
    }
    const std::string derivatives = params.text("derivatives", "analytic");
    if (derivatives != "analytic" && derivatives != "finite_difference")
        params.fail("derivatives", "must be \"analytic\" or \"finite_difference\"");
    const double tolerance = params.positive("tolerance", 1e-4);

    return {params.resolved(), [=]() {
                const VectorField field =
                    derivatives == "analytic" ? sys.field : sys.field.without_analytic();
                const Vec x = phase(q0, p0);
                CsvTable csv({"t", "det_variational", "det_liouville", "reference"});
                double err_var = 0.0, err_liou = 0.0;
                for (double t : times) {
                    const DetComparison c = compare_flow_dets(field, x, t, dt);
                    const double reference = sys.hamiltonian ? 1.0 : std::exp(-sys.gamma * t);
                    err_var = std::max(err_var, std::abs(c.det_variational - reference));
                    err_liou = std::max(err_liou, std::abs(c.det_liouville - reference));
                    csv.add_row({CsvTable::cell(t), CsvTable::cell(c.det_variational),
                                 CsvTable::cell(c.det_liouville), CsvTable::cell(reference)});
                }
                RunResult r;
                r.artifacts = {{".csv", csv.str()}};
                r.summary = {{"reference", sys.hamiltonian ? "1" : "exp(-gamma t)"},
                             {"max_error_variational", err_var},
                             {"max_error_liouville", err_liou}};
                r.check_passed = err_var <= tolerance && err_liou <= tolerance;
                return r;
            }};
}

// ---------------------------------------------------------------- recurrence

std::pair<double, double> read_unit_interval(Params& params, const std::string& key) {
    const auto v = params.reals(key, {0.0, 0.1});
    if (v.size() != 2 || !(0.0 <= v[0] && v[0] < v[1] && v[1] <= 1.0))
        params.fail(key, "must be [lo, hi] with 0 <= lo < hi <= 1");
    return {v[0], v[1]};
}

json recurrence_summary(const RecurrenceReport& rep, std::size_t n_points) {
    return {{"n_points", n_points},
            {"returning_fraction", rep.returning_fraction},
            {"mean_first_return", optional_json(rep.mean_first_return)},
            {"set_measure_estimate", rep.set_measure_estimate},
            {"candidates_drawn", rep.candidates_drawn},
            {"seed", rep.seed}};
}

PreparedRun prepare_recurrence(const BuiltSystem& sys, Params& params) {
    const std::uint64_t seed = params.integer("seed", 1);
    const unsigned workers = read_workers(params);
    const double tolerance = params.non_negative("tolerance", 0.0);

    if (sys.map) {
        const auto [lo, hi] = read_unit_interval(params, "set_interval");
        const std::size_t horizon = params.positive_integer("horizon", 1000);
        const std::size_t n_points = params.positive_integer("n_points", 500);
        return {params.resolved(), [=]() {
                    const Indicator set = [lo, hi](const Vec& x) { return lo <= x[0] && x[0] < hi; };
                    const auto rep =
                        recurrence_experiment_map(*sys.map, set, Box::unit(1), n_points, horizon, seed, workers);
                    CsvTable csv({"index", "x", "first_return", "return_count"});
                    for (std::size_t i = 0; i < rep.records.size(); ++i) {
                        const auto& rec = rep.records[i];
                        csv.add_row({CsvTable::cell(i), CsvTable::cell(rec.start[0]),
                                     CsvTable::cell(rec.first_return), CsvTable::cell(rec.return_count)});
                    }
                    RunResult r;
                    r.artifacts = {{".csv", csv.str()}};
                    r.summary = recurrence_summary(rep, n_points);
                    r.summary["horizon"] = horizon;
                    r.check_passed = rep.returning_fraction >= 1.0 - tolerance;
                    return r;
                }};
    }

    const auto center = params.reals("set_center", {1.0, 0.0});
    if (center.size() != 2) params.fail("set_center", "must be [q, p]");
    const double radius = params.positive("set_radius", 0.1);
    const double horizon = params.positive("horizon", 3.0 * default_span(sys));
    const double dt = params.positive("dt", 1e-2);
    check_steps(params, horizon, dt);
    const std::size_t n_points = params.positive_integer("n_points", 100);
    return {params.resolved(), [=]() {
                const Vec c = phase(center[0], center[1]);
                const Indicator disk = [c, radius](const Vec& z) { return (z - c).norm() < radius; };
                const Box domain{{c[0] - radius, c[0] + radius}, {c[1] - radius, c[1] + radius}};
                const auto rep =
                    recurrence_experiment_flow(sys.field, disk, domain, n_points, horizon, dt, seed, workers);
                CsvTable csv({"index", "q1", "p1", "first_return", "return_count"});
                for (std::size_t i = 0; i < rep.records.size(); ++i) {
                    const auto& rec = rep.records[i];
                    csv.add_row({CsvTable::cell(i), CsvTable::cell(rec.start[0]), CsvTable::cell(rec.start[1]),
                                 CsvTable::cell(rec.first_return), CsvTable::cell(rec.return_count)});
                }
                RunResult r;
                r.artifacts = {{".csv", csv.str()}};
                r.summary = recurrence_summary(rep, n_points);
                r.summary["horizon"] = horizon;
                r.check_passed = rep.returning_fraction >= 1.0 - tolerance;
                return r;
            }};
}

// ---------------------------------------------------------------- volume

// Region of phase space holding {H <= E} for a 1-dof H = p^2/2m + V(q),
// together with a reference value for its area.
struct Sublevel {
    Box box{{0.0, 1.0}, {0.0, 1.0}};
    double reference = 0.0;
};

// Area of {p^2/2m + V(q) <= E} over q in [lo, hi] by the midpoint rule;
// the square-root endpoint singularity costs O(h^1.5).
double sublevel_area(const std::function<double(double)>& v, double m, double e, double lo, double hi) {
    constexpr std::size_t n = 200'000;
    const double h = (hi - lo) / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double gap = e - v(lo + (static_cast<double>(i) + 0.5) * h);
        if (gap > 0.0) sum += 2.0 * std::sqrt(2.0 * m * gap);
    }
    return sum * h;
}

double polynomial_value(const std::vector<double>& c, double q) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = (acc + c[k]) * q;
    return acc;
}

Sublevel sublevel_region(const BuiltSystem& sys, double e) {
    const double m = sys.mass;
    if (sys.info->key == "harmonic") {
        const double qmax = std::sqrt(2.0 * e / (m * sys.omega * sys.omega));
        const double pmax = std::sqrt(2.0 * m * e);
        return {Box{{-qmax, qmax}, {-pmax, pmax}}, 2.0 * pi * e / sys.omega};
    }
    if (sys.info->key == "pendulum") {
        const double g = sys.g_over_L;
        const double qmax = e >= 2.0 * g ? pi : std::acos(1.0 - e / g);
        const double pmax = std::sqrt(2.0 * e);
        const auto v = [g](double q) { return g * (1.0 - std::cos(q)); };
        return {Box{{-qmax, qmax}, {-pmax, pmax}}, sublevel_area(v, 1.0, e, -qmax, qmax)};
    }
    // Polynomial: Cauchy's root bound for V(q) - E brackets the set, then a
    // scan tightens it to within one grid cell.
    const auto& c = sys.coefficients;
    std::size_t deg = c.size();
    while (deg > 0 && c[deg - 1] == 0.0) --deg;
    double bound = std::abs(e / c[deg - 1]);
    for (std::size_t k = 0; k + 1 < deg; ++k) bound = std::max(bound, std::abs(c[k] / c[deg - 1]));
    bound += 1.0;
    const auto v = [&c](double q) { return polynomial_value(c, q); };
    constexpr std::size_t n = 200'000;
    const double h = 2.0 * bound / static_cast<double>(n);
    double lo = INFINITY, hi = -INFINITY, vmin = INFINITY;
    for (std::size_t i = 0; i <= n; ++i) {
        const double q = -bound + static_cast<double>(i) * h;
        const double vq = v(q);
        if (vq <= e) {
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            vmin = std::min(vmin, vq);
        }
    }
    if (!(lo <= hi)) return {};  // empty set: reference 0 on an arbitrary box
    lo = std::max(-bound, lo - h);
    hi = std::min(bound, hi + h);
    const double pmax = 1.01 * std::sqrt(2.0 * m * (e - vmin)) + 1e-12;
    return {Box{{lo, hi}, {-pmax, pmax}}, sublevel_area(v, m, e, lo, hi)};
}

PreparedRun prepare_volume(const BuiltSystem& sys, Params& params) {
    const auto levels = params.reals("E_levels", default_energy_levels(sys));
    for (double e : levels)
        if (!(e > 0.0)) params.fail("E_levels", "entries must be > 0");
    const std::size_t n_points = params.positive_integer("n_points", 100'000);
    const std::uint64_t seed = params.integer("seed", 1);
    const double k_sigma = params.positive("k_sigma", 4.0);
    const unsigned workers = read_workers(params);
    if (sys.info->key == "custom-polynomial") {
        const auto& c = sys.coefficients;
        std::size_t deg = c.size();
        while (deg > 0 && c[deg - 1] == 0.0) --deg;
        if (deg == 0 || deg % 2 != 0 || c[deg - 1] < 0.0)
            params.fail("coefficients", "must give V -> +inf in both directions for {H <= E} to be bounded");
    }

    return {params.resolved(), [=]() {
                const SeparableHamiltonian& h = *sys.hamiltonian;
                CsvTable csv({"E", "estimate", "standard_error", "reference", "abs_error", "n_samples"});
                bool pass = true;
                double worst_z = 0.0;
                for (double e : levels) {
                    const Sublevel region = sublevel_region(sys, e);
                    const Indicator inside = [&h, e](const Vec& z) { return h(z) <= e; };
                    const VolumeEstimate est = estimate_volume_mc(inside, region.box, n_points, seed, workers);
                    const double err = std::abs(est.estimate - region.reference);
                    pass = pass && err <= k_sigma * est.standard_error + 1e-12;
                    if (est.standard_error > 0.0) worst_z = std::max(worst_z, err / est.standard_error);
                    csv.add_row({CsvTable::cell(e), CsvTable::cell(est.estimate),
                                 CsvTable::cell(est.standard_error), CsvTable::cell(region.reference),
                                 CsvTable::cell(err), CsvTable::cell(est.n_samples)});
                }
                RunResult r;
                r.artifacts = {{".csv", csv.str()}};
                r.summary = {{"k_sigma", k_sigma}, {"max_z_score", worst_z}, {"within_k_sigma", pass}};
                r.check_passed = pass;
                return r;
            }};
}

// ---------------------------------------------------------------- invariance

PreparedRun prepare_invariance(const BuiltSystem& sys, Params& params) {
    const std::size_t n_points = params.positive_integer("n_points", 100'000);
    const std::uint64_t seed = params.integer("seed", 1);
    const double k_sigma = params.positive("k_sigma", 4.0);
    const unsigned workers = read_workers(params);
    const std::size_t grid = params.integer("grid", 10'000);
    if (grid < 2) params.fail("grid", "must be >= 2");
    const auto [lo, hi] = read_unit_interval(params, "set_interval");

    return {params.resolved(), [=]() {
                const std::vector<std::pair<std::string, TestFunction>> tests{
                    {"cos(2 pi x)", [](const Vec& x) { return std::cos(2.0 * pi * x[0]); }},
                    {"x", [](const Vec& x) { return x[0]; }},
                    {"x^2", [](const Vec& x) { return x[0] * x[0]; }},
                    {"1[0.3, 0.6)", [](const Vec& x) { return 0.3 <= x[0] && x[0] < 0.6 ? 1.0 : 0.0; }},
                };
                std::vector<TestFunction> fns;
                for (const auto& t : tests) fns.push_back(t.second);
                const Box unit = Box::unit(1);
                const InvarianceReport rep =
                    invariance_by_integrals(*sys.map, fns, unit, n_points, seed, k_sigma, workers);
                const double preimage = preimage_measure_discrepancy(*sys.map, {Box{{lo, hi}}}, unit, grid);

                CsvTable csv({"test_function", "lhs_integral", "rhs_integral", "discrepancy", "combined_mc_error"});
                for (std::size_t k = 0; k < tests.size(); ++k) {
                    const auto& c = rep.per_test_function[k];
                    csv.add_row({CsvTable::cell(tests[k].first), CsvTable::cell(c.lhs_integral),
                                 CsvTable::cell(c.rhs_integral), CsvTable::cell(c.discrepancy),
                                 CsvTable::cell(c.combined_mc_error)});
                }
                RunResult r;
                r.artifacts = {{".csv", csv.str()}};
                r.summary = {{"pass", rep.pass},
                             {"k_sigma", rep.k_sigma},
                             {"preimage_discrepancy", preimage},
                             {"grid", grid}};
                r.check_passed = rep.pass;
                return r;
            }};
}

}  // namespace

json ExperimentConfig::to_json() const {
    return {{"experiment", experiment}, {"system", system}, {"parameters", parameters}, {"output", output}};
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"portrait", "simulate", "liouville",
                                                "recurrence", "volume", "invariance"};
    return names;
}

bool experiment_uses_seed(std::string_view experiment) {
    return experiment == "recurrence" || experiment == "volume" || experiment == "invariance";
}

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (key != "experiment" && key != "system" && key != "parameters" && key != "output")
            throw ValidationError("config: unknown key \"" + key + "\"");
    ExperimentConfig cfg;
    auto string_field = [&](const char* key, bool required) -> std::string {
        if (!doc.contains(key)) {
            if (required) throw ValidationError(std::string("config: missing \"") + key + "\"");
            return "";
        }
        if (!doc[key].is_string() || doc[key].get<std::string>().empty())
            throw ValidationError(std::string("config: \"") + key + "\" must be a non-empty string");
        return doc[key].get<std::string>();
    };
    cfg.experiment = string_field("experiment", true);
    cfg.system = string_field("system", true);
    cfg.output = string_field("output", false);
    if (cfg.output.empty()) cfg.output = cfg.experiment + "_" + cfg.system;
    if (doc.contains("parameters")) {
        if (!doc["parameters"].is_object()) throw ValidationError("config: \"parameters\" must be an object");
        cfg.parameters = doc["parameters"];
    }
    if (std::find(experiment_names().begin(), experiment_names().end(), cfg.experiment) ==
        experiment_names().end())
        throw ValidationError("config: unknown experiment \"" + cfg.experiment + "\"");
    return cfg;
}

PreparedRun prepare(const ExperimentConfig& config) {
    const SystemInfo& info = find_system(config.system);
    if (!info.supports(config.experiment))
        throw ValidationError("experiment \"" + config.experiment + "\" is not available for system \"" +
                              config.system + "\"");
    Params params(config.parameters, config.experiment + " on " + config.system);
    const BuiltSystem sys = build_system(info, params);
    PreparedRun run;
    if (config.experiment == "portrait") run = prepare_portrait(sys, params);
    else if (config.experiment == "simulate") run = prepare_simulate(sys, params);
    else if (config.experiment == "liouville") run = prepare_liouville(sys, params);
    else if (config.experiment == "recurrence") run = prepare_recurrence(sys, params);
    else if (config.experiment == "volume") run = prepare_volume(sys, params);
    else run = prepare_invariance(sys, params);
    params.finish();
    return run;
}

}  // namespace ergolab::cli
