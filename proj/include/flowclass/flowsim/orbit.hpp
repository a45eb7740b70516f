#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flowclass/numkit/linalg.hpp"

namespace flowclass::flowsim {

using numkit::MatrixD;
using numkit::MatrixQ;
using numkit::Rational;

struct OrbitSample {
    std::vector<double> times;
    std::vector<std::vector<double>> points;
    std::vector<double> x0;
};

/// e^{tA} x0.
std::vector<double> orbit_point(const MatrixD& a, std::span<const double> x0, double t);

OrbitSample sample_orbit(const MatrixD& a, std::span<const double> x0, std::span<const double> times);

enum class Boundedness { bounded, unbounded, undetermined };

const char* to_string(Boundedness b);

/// Exact verdict: x0 has a bounded orbit iff it lies in the sum of the center
/// eigenspaces, i.e. p(A) x0 = 0 for p the product of the distinct irreducible
/// center factors of the characteristic polynomial. Throws FallbackNeeded when
/// the exact spectrum is unavailable.
Boundedness bounded_exact(const MatrixQ& a, std::span<const Rational> x0);

inline constexpr double kDefaultGrowthCap = 1e3;
inline constexpr double kDefaultHorizon = 1e3;

struct ProbeOptions {
    double horizon = kDefaultHorizon;
    /// Grid points over [-T, T]; the state is stepped from t = 0 by T / (samples / 2).
    std::size_t samples = 401;
    double growth_cap = kDefaultGrowthCap;
    /// Allowed relative increase of the outer-half maximum over the inner-half maximum.
    double drift_tol = 1e-2;
};

struct ProbeResult {
    Boundedness verdict = Boundedness::undetermined;
    double max_norm = 0.0;
    double inner_max = 0.0;
    double outer_max = 0.0;
    /// Roundoff allowance added to every comparison.
    double floor = 0.0;
};

/// Sampling verdict over t in [-T, T]: unbounded when max |x(t)| exceeds
/// growth_cap * |x0| by more than the roundoff floor; bounded when max plus floor
/// stays below the cap and the maximum stops growing between |t| <= T/2 and
/// |t| <= T; undetermined otherwise.
ProbeResult bounded_probe(const MatrixD& a, std::span<const double> x0, const ProbeOptions& opts = {});

enum class PeriodKind { period, fixed_point, none_found };

struct PeriodResult {
    PeriodKind kind = PeriodKind::none_found;
    double period = 0.0;
    /// |x(T) - x0| at the returned period.
    double residual = 0.0;
};

struct PeriodOptions {
    double horizon = kDefaultHorizon;
    /// Default (2 pi / beta_max) / 64 from the eigenvalues of A.
    std::optional<double> grid_step;
    double tol = 1e-8;
    int bisection_steps = 40;
};

/// Smallest t in (0, horizon] with |x(t) - x0| < tol (1 + |x0|): local minima of
/// the return distance on a grid, each refined by bisection on its derivative.
PeriodResult min_period(const MatrixD& a, std::span<const double> x0, const PeriodOptions& opts = {});

}  // namespace flowclass::flowsim
