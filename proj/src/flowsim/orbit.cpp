#include "flowclass/flowsim/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "flowclass/spectral/spectral.hpp"

namespace flowclass::flowsim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm2(std::span<const double> v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::fabs(x));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (double x : v) s += (x / scale) * (x / scale);
    return scale * std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void check_dims(const MatrixD& a, std::span<const double> x0) {
    if (x0.size() != a.size())
        throw UsageError("initial state has dimension " + std::to_string(x0.size()) + " but the matrix is " +
                         std::to_string(a.size()) + "x" + std::to_string(a.size()));
}

double max_frequency(const MatrixD& a) {
    try {
        double b = 0.0;
        for (const auto& e : spectral::eigenvalues(a)) b = std::max(b, std::fabs(e.value.approx().im));
        return b;
    } catch (const NumericalError&) {
        return a.norm_inf();
    }
}

}  // namespace

std::vector<double> orbit_point(const MatrixD& a, std::span<const double> x0, double t) {
    check_dims(a, x0);
    if (!std::isfinite(t)) throw UsageError("orbit time must be finite");
    return numkit::mat_exp(a, t).apply(x0);
}

OrbitSample sample_orbit(const MatrixD& a, std::span<const double> x0, std::span<const double> times) {
    OrbitSample s;
    s.x0.assign(x0.begin(), x0.end());
    for (double t : times) {
        s.times.push_back(t);
        s.points.push_back(orbit_point(a, x0, t));
    }
    return s;
}

const char* to_string(Boundedness b) {
    switch (b) {
        case Boundedness::bounded:
            return "bounded";
        case Boundedness::unbounded:
            return "unbounded";
        default:
            return "undetermined";
    }
}

Boundedness bounded_exact(const MatrixQ& a, std::span<const Rational> x0) {
    if (x0.size() != a.size()) throw UsageError("initial state dimension does not match the matrix");
    numkit::PolyQ p({Rational(1)});
    std::vector<numkit::PolyQ> seen;
    for (const auto& e : spectral::eigenvalues(a)) {
        if (e.value.exact().real_sign() != 0) continue;
        if (std::find(seen.begin(), seen.end(), *e.factor) != seen.end()) continue;
        seen.push_back(*e.factor);
        p = p * *e.factor;
    }
    const auto v = numkit::evaluate(p, a).apply(x0);
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.is_zero(); }) ? Boundedness::bounded
                                                                                           : Boundedness::unbounded;
}

ProbeResult bounded_probe(const MatrixD& a, std::span<const double> x0, const ProbeOptions& opts) {
    check_dims(a, x0);
    if (!(opts.horizon > 0.0) || !std::isfinite(opts.horizon)) throw UsageError("probe horizon must be positive");
    if (opts.samples < 2) throw UsageError("probe needs at least two samples");
    if (!(opts.growth_cap >= 1.0)) throw UsageError("growth cap must be at least 1");

    ProbeResult r;
    const double n0 = norm2(x0);
    if (n0 == 0.0) {
        r.verdict = Boundedness::bounded;
        return r;
    }
    // March the state from t = 0 in both directions with a fixed step. The error
    // made at step i is carried to step j by e^{(t_j - t_i) A}; the floor sums
    // those first-order contributions.
    const std::size_t steps = std::max<std::size_t>(1, opts.samples / 2);
    const double h = opts.horizon / static_cast<double>(steps);
    const double unit = 8.0 * static_cast<double>(a.size()) * kEps;
    r.max_norm = r.inner_max = n0;
    for (double dir : {1.0, -1.0}) {
        const MatrixD step = numkit::mat_exp(a, dir * h);
        MatrixD phi = MatrixD::identity(a.size());
        std::vector<double> x(x0.begin(), x0.end());
        std::vector<double> flow_norm{1.0}, state_norm{n0};
        for (std::size_t j = 1; j <= steps; ++j) {
            x = step.apply(x);
            phi = step * phi;
            if (!all_finite(x) || !all_finite(phi.data())) {
                r.verdict = Boundedness::undetermined;
                r.max_norm = std::numeric_limits<double>::infinity();
                return r;
            }
            const double nx = norm2(x);
            flow_norm.push_back(phi.norm_inf());
            state_norm.push_back(nx);
            double err = 0.0;
            for (std::size_t i = 0; i < j; ++i) err += flow_norm[j - i] * state_norm[i];
            r.floor = std::max(r.floor, unit * err);
            r.max_norm = std::max(r.max_norm, nx);
            if (2 * j <= steps)
                r.inner_max = std::max(r.inner_max, nx);
            else
                r.outer_max = std::max(r.outer_max, nx);
        }
    }
    const double cap = opts.growth_cap * n0;
    if (r.max_norm > cap + r.floor)
        r.verdict = Boundedness::unbounded;
    else if (r.max_norm + r.floor <= cap && r.outer_max <= (1.0 + opts.drift_tol) * r.inner_max + r.floor)
        r.verdict = Boundedness::bounded;
    else
        r.verdict = Boundedness::undetermined;
    return r;
}

PeriodResult min_period(const MatrixD& a, std::span<const double> x0, const PeriodOptions& opts) {
    check_dims(a, x0);
    if (!(opts.horizon > 0.0)) throw UsageError("period horizon must be positive");
    const double nx0 = norm2(x0);
    const auto ax0 = a.apply(x0);
    PeriodResult res;
    if (norm2(ax0) <= 4.0 * kEps * a.norm_inf() * nx0 || nx0 == 0.0) {
        res.kind = PeriodKind::fixed_point;
        return res;
    }

    double h = 0.0;
    if (opts.grid_step) {
        h = *opts.grid_step;
    } else {
        const double b = max_frequency(a);
        if (b == 0.0) return res;
        h = (2.0 * std::numbers::pi / b) / 64.0;
    }
    if (!(h > 0.0) || !(h < opts.horizon)) throw UsageError("grid step must satisfy 0 < step < horizon");

    const double accept = opts.tol * (1.0 + nx0);
    auto state = [&](double t) { return numkit::mat_exp(a, t).apply(x0); };
    auto dist = [&](double t) { return distance(state(t), x0); };
    // d/dt of |x(t) - x0|^2 / 2.
    auto slope = [&](double t) {
        const auto x = state(t);
        const auto ax = a.apply(x);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - x0[i]) * ax[i];
        return s;
    };

    const MatrixD step = numkit::mat_exp(a, h);
    const std::size_t count = static_cast<std::size_t>(std::floor(opts.horizon / h));
    std::vector<double> x(x0.begin(), x0.end());
    double d_prev2 = 0.0, d_prev = 0.0, v_prev = norm2(ax0), v_prev2 = v_prev;
    for (std::size_t j = 1; j <= count + 1; ++j) {
        const double t = static_cast<double>(j) * h;
        // Resynchronize the stepped state now and then.
        x = (j % 1024 == 0) ? state(t) : step.apply(x);
        const double d = distance(x, x0);
        const double v = norm2(a.apply(x));
        if (j >= 3 && d_prev2 > d_prev && d_prev <= d) {
            const double tc = t - h;
            if (d_prev <= h * std::max({v_prev2, v_prev, v}) + accept) {
                double lo = tc - h, hi = std::min(tc + h, opts.horizon + h);
                double best;
                if (slope(lo) < 0.0 && slope(hi) > 0.0) {
                    for (int it = 0; it < opts.bisection_steps; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (slope(mid) < 0.0 ? lo : hi) = mid;
                    }
                    best = 0.5 * (lo + hi);
                } else {
                    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
                    for (int it = 0; it < 2 * opts.bisection_steps; ++it) {
                        const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
                        if (dist(m1) < dist(m2))
                            hi = m2;
                        else
                            lo = m1;
                    }
                    best = 0.5 * (lo + hi);
                }
                const double db = dist(best);
                if (db < accept && best > 0.0 && best <= opts.horizon) {
                    res.kind = PeriodKind::period;
                    res.period = best;
                    res.residual = db;
                    return res;
                }
            }
        }
        d_prev2 = d_prev;
        d_prev = d;
        v_prev2 = v_prev;
        v_prev = v;
    }
    return res;
}

}  // namespace flowclass::flowsim
