#pragma once

#include <string>
#include <vector>

#include "flowclass/spectral/descriptor.hpp"

namespace flowclass::invariants {

struct ConjugacySignature {
    std::size_t n = 0;
    std::size_t dim_plus = 0;
    std::size_t dim_minus = 0;
    /// Sorted by (|Im lambda|, positive imaginary part first, block size).
    std::vector<spectral::JordanBlocks> center;
    double tol = spectral::kDescriptorTol;
};

ConjugacySignature conjugacy_signature(const spectral::SpectrumDescriptor& desc, double tol = 0.0);

struct Decision {
    bool conjugate = false;
    /// First differing invariant; empty when conjugate.
    std::string certificate;
};

/// Criterion shared by topological conjugacy and topological equivalence.
Decision decide_conjugate(const ConjugacySignature& a, const ConjugacySignature& b);

inline bool operator==(const ConjugacySignature& a, const ConjugacySignature& b) {
    return decide_conjugate(a, b).conjugate;
}

}  // namespace flowclass::invariants
