#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "flowclass/invariants/classes.hpp"

namespace flowclass::invariants {

struct ChiProfile {
    /// Ascending.
    std::vector<Frequency> singular_values;
    /// Parallel to singular_values.
    std::vector<std::size_t> preimage_dims;
};

/// All gcds of nonempty sub-multisets of p, by closure under pairwise gcd. Ascending.
std::vector<std::int64_t> gcd_closure(const std::vector<std::int64_t>& p);

std::vector<Frequency> singular_values(const RationalClass& cls);

/// beta * gcd(p_i : i in support). Indices are 0-based.
Frequency chi(const std::vector<std::size_t>& support, const RationalClass& cls);

/// dimD + #{i : (q / beta) divides p_i}; q must be a singular value.
std::size_t preimage_dim(const RationalClass& cls, const Frequency& q, std::size_t dimD);

ChiProfile chi_profile(const RationalClass& cls, std::size_t dimD);

/// Rebuilds p (ascending) from the singular values and closure dimensions by
/// inclusion-exclusion over divisibility, largest multiplier first.
std::vector<std::int64_t> recover_p(const std::vector<Frequency>& singular,
                                    const std::function<std::size_t(const Frequency&)>& dim_oracle,
                                    std::size_t dimD);

}  // namespace flowclass::invariants
