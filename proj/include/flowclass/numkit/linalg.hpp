#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flowclass/numkit/matrix.hpp"
#include "flowclass/numkit/poly.hpp"

namespace flowclass::numkit {

/// Default relative pivot threshold for floating rank.
inline constexpr double kDefaultRankTol = 1e-10;

/// Rank by elimination. Exact matrices require tol == 0 and use fraction-free
/// (Bareiss) elimination; floating matrices treat a pivot as zero when
/// |pivot| <= tol * (largest initial entry magnitude).
std::size_t rank(const MatrixQ& m, double tol = 0.0);
std::size_t rank(const MatrixCQ& m, double tol = 0.0);
std::size_t rank(const MatrixD& m, double tol = kDefaultRankTol);
std::size_t rank(const MatrixCD& m, double tol = kDefaultRankTol);

/// Monic characteristic polynomial det(tI - M) via the Faddeev-LeVerrier recurrence.
PolyQ char_poly(const MatrixQ& m);
PolyD char_poly(const MatrixD& m);

/// Exact inverse; throws UsageError when singular.
MatrixQ inverse(const MatrixQ& m);

/// p(M) by Horner's rule.
MatrixQ evaluate(const PolyQ& p, const MatrixQ& m);

/// e^{tA} by scaling and squaring of a truncated Taylor series
/// (scaled so ||tA||_1 / 2^s <= 0.5, then 20 terms).
MatrixD mat_exp(const MatrixD& a, double t);
MatrixCD mat_exp(const MatrixCD& a, double t);

/// Exact e^{tN} for nilpotent N (finite series); nullopt when N^n != 0.
std::optional<MatrixQ> mat_exp_nilpotent(const MatrixQ& n, const Rational& t);

/// Closed form e^{tJ} for the m x m Jordan block J = lambda*I + (superdiagonal ones):
/// entries e^{t lambda} t^k / k! on the k-th superdiagonal.
MatrixCD jordan_block_exp(ComplexD lambda, std::size_t m, double t);

/// [rank((A - lambda I)^k)] for k = 0..kmax.
std::vector<std::size_t> power_rank_sequence(const MatrixCQ& a, const ComplexQ& lambda, std::size_t kmax);
std::vector<std::size_t> power_rank_sequence(const MatrixQ& a, const ComplexQ& lambda, std::size_t kmax);
std::vector<std::size_t> power_rank_sequence(const MatrixCD& a, ComplexD lambda, std::size_t kmax,
                                             double tol = kDefaultRankTol);
std::vector<std::size_t> power_rank_sequence(const MatrixD& a, ComplexD lambda, std::size_t kmax,
                                             double tol = kDefaultRankTol);

/// [rank(f(A)^k)] for k = 0..kmax; used when f is an irreducible factor over Q
/// whose roots are not Gaussian rationals. Stops early once the rank stabilizes
/// (the tail is filled with the stable value).
std::vector<std::size_t> factor_power_rank_sequence(const MatrixQ& a, const PolyQ& f, std::size_t kmax);

}  // namespace flowclass::numkit
