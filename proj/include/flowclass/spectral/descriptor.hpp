#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flowclass/spectral/eigenvalue.hpp"

namespace flowclass::spectral {

/// count Jordan blocks of size `size` at eigenvalue `lambda` (count = N(lambda, size)).
struct JordanBlocks {
    Eigenvalue lambda;
    std::size_t size = 1;
    std::size_t count = 1;
};

/// Default tolerance used to compare floating eigenvalues inside a descriptor.
inline constexpr double kDescriptorTol = 1e-9;

/// Complexified Jordan data of an operator: the multiset of (lambda, m, N(lambda, m)).
///
/// Construction validates sum m * count == n, homogeneous scalar mode, and, when
/// flagged real, conjugate symmetry. Entries with equal (lambda, m) are merged and
/// the result is kept in canonical order (eigenvalue order, then block size).
class SpectrumDescriptor {
   public:
    SpectrumDescriptor(std::size_t n, std::vector<JordanBlocks> blocks, bool real, double tol = kDescriptorTol);

    [[nodiscard]] std::size_t dimension() const { return n_; }
    [[nodiscard]] const std::vector<JordanBlocks>& blocks() const { return blocks_; }
    [[nodiscard]] bool is_real() const { return real_; }
    [[nodiscard]] bool is_exact() const { return exact_; }
    [[nodiscard]] double tolerance() const { return tol_; }

    /// Distinct eigenvalues in canonical order with their algebraic multiplicities.
    [[nodiscard]] std::vector<std::pair<Eigenvalue, std::size_t>> eigenvalues() const;

   private:
    std::size_t n_;
    std::vector<JordanBlocks> blocks_;
    bool real_;
    bool exact_ = true;
    double tol_;
};

/// The (V+, V-, V0) split and the center Jordan data (the blocks of A_0).
struct SpectralSplit {
    std::size_t dim_plus = 0;
    std::size_t dim_minus = 0;
    std::size_t dim_zero = 0;
    std::vector<JordanBlocks> center_blocks;
    /// Smallest distance of any |Re lambda| from the zero threshold (floating mode only).
    std::optional<double> margin;
};

/// Classify blocks by the sign of Re(lambda); floating values with |Re| <= tol are center.
SpectralSplit split_dims(const SpectrumDescriptor& desc, double tol);

}  // namespace flowclass::spectral
