#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flowclass/spectral/descriptor.hpp"

namespace flowclass::invariants {

using spectral::Frequency;

inline constexpr int kDefaultQmax = 64;
inline constexpr double kDefaultRatioTol = 1e-9;

/// How one member of a floating class was admitted: its ratio to the class
/// reference member was matched by the convergent num/den.
struct RatioEvidence {
    std::int64_t num = 1;
    std::int64_t den = 1;
    double rel_error = 0.0;
};

/// Frequencies beta * p_i, p sorted ascending with gcd 1.
struct RationalClass {
    Frequency beta;
    std::vector<std::int64_t> p;
    /// Input frequencies in the order of p.
    std::vector<Frequency> members;
    /// Floating mode only, parallel to members.
    std::vector<RatioEvidence> evidence;

    [[nodiscard]] bool is_exact() const { return beta.is_exact(); }
};

/// Partitions positive frequencies by rational ratio. Exact frequencies are
/// grouped by radicand; floating ones by continued-fraction convergents with
/// denominator <= qmax and relative error < tol. Throws InconsistentInvariants
/// when floating acceptances are not transitive.
std::vector<RationalClass> rational_classes(const std::vector<Frequency>& betas, int qmax = kDefaultQmax,
                                            double tol = kDefaultRatioTol);

/// Best convergent n/d of x with d <= qmax.
std::pair<std::int64_t, std::int64_t> best_convergent(double x, int qmax);

struct BoundedStructure {
    std::size_t dimB = 0;
    std::size_t dimD = 0;
    /// Classes with at least two members.
    std::vector<RationalClass> classes;
    /// Frequencies alone in their class.
    std::vector<Frequency> unclassed;
};

/// Positive center frequencies (one per block corner) and the number of corners at 0.
/// Returns the frequencies with multiplicity.
std::vector<Frequency> center_frequencies(const spectral::SpectrumDescriptor& desc, double tol, std::size_t& dimD);

BoundedStructure bounded_structure(const spectral::SpectrumDescriptor& desc, int qmax = kDefaultQmax,
                                   double tol = kDefaultRatioTol);

/// beta * g, exactly when beta is exact.
Frequency scaled(const Frequency& beta, std::int64_t g);

/// q / beta as a positive integer, or nullopt when it is not one (within tol for floating values).
std::optional<std::int64_t> integer_ratio(const Frequency& q, const Frequency& beta, double tol = 1e-9);

}  // namespace flowclass::invariants
