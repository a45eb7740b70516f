#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flowclass/numkit/linalg.hpp"
#include "flowclass/spectral/descriptor.hpp"

namespace flowclass::spectral {

using numkit::MatrixCD;
using numkit::MatrixCQ;
using numkit::MatrixD;
using numkit::MatrixQ;

struct EigenvalueMultiplicity {
    Eigenvalue value;
    std::size_t multiplicity = 1;
    /// Exact mode: the irreducible rational factor of the characteristic polynomial.
    std::optional<PolyQ> factor;
};

/// (m, N(lambda, m)) with N > 0, ascending in m.
struct JordanCount {
    std::size_t size;
    std::size_t count;
    friend bool operator==(const JordanCount&, const JordanCount&) = default;
};

struct SpectralOptions {
    /// Eigenvalue clustering radius and zero-real-part threshold; default 1e-8 * (1 + ||A||_inf).
    std::optional<double> tol;
    /// Relative pivot threshold for the rank computations behind Jordan counts.
    double rank_tol = numkit::kDefaultRankTol;
    int max_iter = 500;

    [[nodiscard]] double resolved_tol(const MatrixD& a) const { return tol ? *tol : 1e-8 * (1.0 + a.norm_inf()); }
};

/// Exact eigenvalues. Succeeds only when the characteristic polynomial splits over
/// Q into linear and irreducible quadratic factors; throws FallbackNeeded otherwise.
std::vector<EigenvalueMultiplicity> eigenvalues(const MatrixQ& a);

/// Floating eigenvalues: Aberth iteration on the characteristic polynomial,
/// then single-linkage clustering at the resolved tolerance. Clusters of a real
/// matrix are symmetrized so that non-real values come in conjugate pairs.
std::vector<EigenvalueMultiplicity> eigenvalues(const MatrixD& a, const SpectralOptions& opts = {});

/// Sums multiplicities by the sign of Re(lambda).
SpectralSplit split_dims(std::span<const EigenvalueMultiplicity> eigs, double tol);

/// N(lambda, m) = r_{m-1} - 2 r_m + r_{m+1} from the rank sequence of powers,
/// where `per_root` divides kernel dimensions (the degree of the factor used).
std::vector<JordanCount> counts_from_ranks(std::span<const std::size_t> ranks, std::size_t per_root = 1);

std::vector<JordanCount> jordan_counts(const MatrixQ& a, const ExactEigenvalue& lambda);
std::vector<JordanCount> jordan_counts(const MatrixCQ& a, const numkit::ComplexQ& lambda);
std::vector<JordanCount> jordan_counts(const MatrixD& a, ComplexD lambda, double tol = numkit::kDefaultRankTol);
std::vector<JordanCount> jordan_counts(const MatrixCD& a, ComplexD lambda, double tol = numkit::kDefaultRankTol);

SpectrumDescriptor spectrum_descriptor(const MatrixQ& a);
SpectrumDescriptor spectrum_descriptor(const MatrixD& a, const SpectralOptions& opts = {});

}  // namespace flowclass::spectral
