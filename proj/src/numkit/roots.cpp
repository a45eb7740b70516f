#include "flowclass/numkit/roots.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace flowclass::numkit {

namespace {

struct Eval {
    ComplexD value;
    ComplexD deriv;
    double error_bound;
};

Eval horner(const std::vector<double>& c, ComplexD z) {
    ComplexD p(c.back());
    ComplexD dp(0.0);
    double bound = std::fabs(c.back());
    const double az = abs(z);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + ComplexD(c[k]);
        bound = bound * az + std::fabs(c[k]);
    }
    return {p, dp, bound * 8.0 * std::numeric_limits<double>::epsilon()};
}

}  // namespace

std::vector<ComplexD> polynomial_roots(const PolyD& poly, int max_iter) {
    if (poly.is_zero()) throw UsageError("roots of the zero polynomial are undefined");
    std::vector<double> c = poly.coeffs();
    std::vector<ComplexD> roots;
    std::size_t zeros = 0;
    while (zeros < c.size() - 1 && c[zeros] == 0.0) ++zeros;
    roots.assign(zeros, ComplexD(0.0));
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return roots;
    const double lead = c.back();
    for (auto& v : c) v /= lead;
    if (deg == 1) {
        roots.emplace_back(-c[0]);
        return roots;
    }

    // Fujiwara bound on root magnitudes.
    double radius = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
        const double e = (k == 0 ? 0.5 : 1.0) * std::fabs(c[k]);
        radius = std::max(radius, std::pow(e, 1.0 / static_cast<double>(deg - k)));
    }
    radius = std::max(2.0 * radius, 1e-3);

    std::vector<ComplexD> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
        z[k] = ComplexD(radius * std::cos(ang), radius * std::sin(ang)) * ComplexD(0.5);
    }
    std::vector<bool> done(deg, false);
    std::size_t remaining = deg;
    for (int it = 0; it < max_iter && remaining > 0; ++it) {
        for (std::size_t k = 0; k < deg; ++k) {
            if (done[k]) continue;
            const Eval e = horner(c, z[k]);
            if (abs(e.value) <= e.error_bound) {
                done[k] = true;
                --remaining;
                continue;
            }
            if (is_zero(e.deriv)) {
                z[k] += ComplexD(1e-7 * (1.0 + abs(z[k])), 1e-7);
                continue;
            }
            const ComplexD ratio = e.value / e.deriv;
            ComplexD sum(0.0);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) sum += ComplexD(1.0) / (z[k] - z[j]);
            const ComplexD w = ratio / (ComplexD(1.0) - ratio * sum);
            z[k] -= w;
            if (abs(w) <= 2.0 * std::numeric_limits<double>::epsilon() * abs(z[k])) {
                done[k] = true;
                --remaining;
            }
        }
    }
    if (remaining > 0)
        throw NonConvergence("Aberth iteration did not converge after " + std::to_string(max_iter) + " sweeps");
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

}  // namespace flowclass::numkit
