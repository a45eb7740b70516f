#include "flowclass/flowsim/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace flowclass::flowsim {

using numkit::Integer;
using numkit::MatrixQ;

namespace {

Integer factorial(std::size_t k) {
    Integer f(1);
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
    return f;
}

double inv_factorial(std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return 1.0 / f;
}

ComplexD cis(double theta) { return {std::cos(theta), std::sin(theta)}; }

double diff_norm(const std::vector<ComplexD>& a, const std::vector<ComplexD>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const ComplexD d = a[i] - b[i];
        s += d.re * d.re + d.im * d.im;
    }
    return std::sqrt(s);
}

// P_j(t) = sum_{k >= j} t^(k-j)/(k-j)! x_k over the support of x (0-based j).
ComplexD head_poly(const std::vector<ComplexD>& x, std::size_t j, double t, bool derivative) {
    ComplexD s(0.0);
    for (std::size_t k = j + (derivative ? 1 : 0); k < x.size(); ++k) {
        const std::size_t p = k - j - (derivative ? 1 : 0);
        s += x[k] * ComplexD(std::pow(t, static_cast<double>(p)) * inv_factorial(p));
    }
    return s;
}

// True when y_j differs from e^{i beta t} P_j(t) at every grid point by more
// than the grid step times a local bound on the derivative, for every j < count.
bool off_orbit(const std::vector<ComplexD>& x, const std::vector<ComplexD>& y, std::size_t count, double beta,
               const WitnessOptions& opts) {
    const long steps = static_cast<long>(std::llround(opts.grid_extent / opts.grid_step));
    for (std::size_t j = 0; j < count; ++j) {
        for (long s = -steps; s <= steps; ++s) {
            const double t = static_cast<double>(s) * opts.grid_step;
            const ComplexD p = head_poly(x, j, t, false);
            const ComplexD dp = head_poly(x, j, t, true);
            const double gap = numkit::abs(y[j] - cis(beta * t) * p);
            const double speed = std::fabs(beta) * numkit::abs(p) + numkit::abs(dp);
            if (gap <= opts.grid_step * speed + 1e-12 * (1.0 + numkit::abs(y[j]))) return false;
        }
    }
    return true;
}

}  // namespace

MatrixQ FactorialSystem::matrix() const {
    if (size == 0) throw UsageError("factorial system size must be at least 1");
    if (offset + 1 < size) throw UsageError("factorial system offset must be at least size - 1");
    MatrixQ m(size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) m(i, j) = numkit::make_rational(Integer(1), factorial(offset - i + j));
    return m;
}

MatrixQ FactorialSystem::inverse() const { return numkit::inverse(matrix()); }

std::vector<Rational> propeq1_solve(std::size_t r, const std::vector<Rational>& y) {
    if (y.size() != r + 1)
        throw UsageError("right-hand side needs " + std::to_string(r + 1) + " entries, got " + std::to_string(y.size()));
    return FactorialSystem{r, r + 1}.inverse().apply(y);
}

std::vector<Rational> propeq1_coefficients(std::size_t r) {
    const MatrixQ inv = FactorialSystem{r, r + 1}.inverse();
    std::vector<Rational> row;
    for (std::size_t j = 0; j <= r; ++j) row.push_back(inv(0, j));
    return row;
}

WitnessSequence witness(ReductionOp op, std::size_t m, double beta, const std::vector<double>& x_head,
                        const WitnessOptions& opts) {
    if (m < 2) throw UsageError("witness needs a block of size at least 2");
    if (!std::isfinite(beta)) throw UsageError("beta must be finite");
    if (opts.n_max < 1) throw UsageError("n_max must be at least 1");
    const std::size_t h = m / 2;      // fixed head coordinates of x_n
    const std::size_t g = m - h;      // equations solved for the tail
    const std::size_t support = op == ReductionOp::X ? g : h;
    if (x_head.size() != support)
        throw UsageError(std::string("x head for ") + (op == ReductionOp::X ? "X" : "Y") + " on W_" +
                         std::to_string(m) + " needs " + std::to_string(support) + " entries, got " +
                         std::to_string(x_head.size()));

    WitnessSequence w;
    w.op = op;
    w.m = m;
    w.beta = beta;
    w.limit_x.assign(m, ComplexD(0.0));
    for (std::size_t k = 0; k < support; ++k) w.limit_x[k] = ComplexD(x_head[k]);
    w.limit_y.assign(m, ComplexD(0.0));

    const bool trivial = std::all_of(x_head.begin(), x_head.end(), [](double v) { return v == 0.0; });
    if (op == ReductionOp::X && !trivial) {
        const std::vector<ComplexD> xs(w.limit_x.begin(), w.limit_x.begin() + static_cast<std::ptrdiff_t>(support));
        bool found = false;
        for (int attempt = 0; attempt < opts.max_delta_tries && !found; ++attempt) {
            // Real offsets first; an imaginary one clears real orbits (beta = 0).
            const double size = opts.delta + attempt / 2;
            w.delta = attempt % 2 == 0 ? ComplexD(size) : ComplexD(0.0, size);
            for (std::size_t j = 0; j < h; ++j) w.limit_y[j] = w.limit_x[j] + w.delta;
            // Odd case: y_{r+1} = (-1)^r x_{r+1}.
            if (g > h) w.limit_y[h] = w.limit_x[h] * ComplexD(h % 2 == 0 ? 1.0 : -1.0);
            found = off_orbit(xs, w.limit_y, h, beta, opts);
        }
        if (!found) throw NumericalError("no offset in the tried range keeps y off the orbit of x");
    }

    const double period = beta == 0.0 ? 1.0 : 2.0 * std::numbers::pi / std::fabs(beta);
    const numkit::MatrixD minv = numkit::to_double(FactorialSystem{h, g}.inverse());
    std::vector<double> log_n, log_err;
    for (std::size_t n = 1; n <= opts.n_max; ++n) {
        const double t = period * static_cast<double>(n);
        WitnessEntry e{t, w.limit_x, w.limit_y};
        if (!trivial) {
            const ComplexD phase = cis(-beta * t);
            // Row j (0-based) scaled by t^(j-h): eps_j = t^(j-h) y_j e^{-i beta t} - sum_{k=j}^{h-1} t^(k-h)/(k-j)! x_k.
            std::vector<ComplexD> eps(g);
            for (std::size_t j = 0; j < g; ++j) {
                ComplexD s = w.limit_y[j] * phase * ComplexD(std::pow(t, static_cast<double>(j) - static_cast<double>(h)));
                for (std::size_t k = j; k < h; ++k)
                    s -= w.limit_x[k] * ComplexD(std::pow(t, static_cast<double>(k) - static_cast<double>(h)) * inv_factorial(k - j));
                eps[j] = s;
            }
            // x_{h+c} = u_c t^{-c}.
            for (std::size_t c = 0; c < g; ++c) {
                ComplexD u(0.0);
                for (std::size_t j = 0; j < g; ++j) u += ComplexD(minv(c, j)) * eps[j];
                e.x[h + c] = u * ComplexD(std::pow(t, -static_cast<double>(c)));
            }
            const ComplexD rot = cis(beta * t);
            for (std::size_t j = g; j < m; ++j) e.y[j] = rot * head_poly(e.x, j, t, false);

            const numkit::MatrixCD flow = numkit::jordan_block_exp(ComplexD(0.0, beta), m, t);
            for (std::size_t j = 0; j < m; ++j) {
                ComplexD z(0.0);
                double scale = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    z += flow(j, k) * e.x[k];
                    scale += numkit::abs(flow(j, k)) * numkit::abs(e.x[k]);
                }
                if (scale > 0.0) w.max_scaled_residual = std::max(w.max_scaled_residual, numkit::abs(z - e.y[j]) / scale);
            }
        }
        const double ex = diff_norm(e.x, w.limit_x);
        if (n >= 10 && ex > 0.0) {
            log_n.push_back(std::log(static_cast<double>(n)));
            log_err.push_back(std::log(ex));
        }
        w.final_x_error = ex;
        w.final_y_error = diff_norm(e.y, w.limit_y);
        w.entries.push_back(std::move(e));
    }

    if (log_n.size() >= 2) {
        const double k = static_cast<double>(log_n.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            sx += log_n[i];
            sy += log_err[i];
            sxx += log_n[i] * log_n[i];
            sxy += log_n[i] * log_err[i];
        }
        w.decay_exponent = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
    } else {
        w.decay_exponent = std::numeric_limits<double>::quiet_NaN();
    }
    return w;
}

WitnessSequence rw_witness(double beta, std::size_t r, const std::vector<double>& x_head, std::size_t n_max) {
    if (r == 0) throw UsageError("r must be at least 1: for r = 0 the construction puts y on the orbit of x");
    WitnessOptions opts;
    opts.n_max = n_max;
    return witness(ReductionOp::X, 2 * r + 1, beta, x_head, opts);
}

}  // namespace flowclass::flowsim
