#pragma once

#include <cstddef>
#include <vector>

#include "flowclass/numkit/linalg.hpp"

namespace flowclass::flowsim {

using numkit::ComplexD;
using numkit::Rational;

/// Matrix with entries 1/(offset - i + j)!, i, j = 0..size-1.
struct FactorialSystem {
    std::size_t offset = 0;
    std::size_t size = 1;

    [[nodiscard]] numkit::MatrixQ matrix() const;
    [[nodiscard]] numkit::MatrixQ inverse() const;
};

/// Solves the (r+1) x (r+1) system with offset r exactly.
std::vector<Rational> propeq1_solve(std::size_t r, const std::vector<Rational>& y);

/// Row of the inverse giving x[0] as a combination of y[0..r].
std::vector<Rational> propeq1_coefficients(std::size_t r);

enum class ReductionOp { X, Y };

struct WitnessEntry {
    double t = 0.0;
    std::vector<ComplexD> x;
    std::vector<ComplexD> y;
};

struct WitnessSequence {
    ReductionOp op = ReductionOp::X;
    /// Block size of W_m.
    std::size_t m = 0;
    double beta = 0.0;
    /// Offset added to the head of y (X only): real, or imaginary when no real offset works.
    ComplexD delta{0.0};
    std::vector<WitnessEntry> entries;
    std::vector<ComplexD> limit_x;
    std::vector<ComplexD> limit_y;

    /// max over n of |e^{t_n J} x_n - y_n| / (|e^{t_n J}| |x_n|), componentwise.
    double max_scaled_residual = 0.0;
    /// Fitted exponent a in |x_n - x| ~ C n^-a; NaN when the errors vanish.
    double decay_exponent = 0.0;
    double final_x_error = 0.0;
    double final_y_error = 0.0;

    /// r with m = 2r + 1 or m = 2r.
    [[nodiscard]] std::size_t r() const { return m / 2; }
};

struct WitnessOptions {
    std::size_t n_max = 1000;
    double delta = 1.0;
    double grid_extent = 1e3;
    double grid_step = 1e-2;
    int max_delta_tries = 8;
};

/// Witness sequence x_n -> x, y_n = e^{t_n J} x_n -> y for a Jordan block J of
/// size m at i*beta, x = (x_head, 0, ...), with t_n = 2 pi n / |beta| (n when beta = 0).
/// op X: y lies off the orbit of x (so x is in X(W_m)); x_head has ceil(m/2) entries.
/// op Y: y = 0 (so x is in Y(W_m)); x_head has floor(m/2) entries.
WitnessSequence witness(ReductionOp op, std::size_t m, double beta, const std::vector<double>& x_head,
                        const WitnessOptions& opts = {});

/// The odd X case m = 2r + 1.
WitnessSequence rw_witness(double beta, std::size_t r, const std::vector<double>& x_head, std::size_t n_max = 1000);

}  // namespace flowclass::flowsim
