#include "flowclass/spectral/descriptor.hpp"

#include <algorithm>
#include <cmath>

namespace flowclass::spectral {

SpectrumDescriptor::SpectrumDescriptor(std::size_t n, std::vector<JordanBlocks> blocks, bool real, double tol)
    : n_(n), real_(real), tol_(tol) {
    if (n == 0) throw UsageError("spectrum descriptor dimension must be at least 1");
    if (blocks.empty()) throw UsageError("spectrum descriptor has no blocks");
    exact_ = blocks.front().lambda.is_exact();
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.size == 0) throw UsageError("Jordan block size must be at least 1");
        if (b.count == 0) throw UsageError("Jordan block count must be at least 1");
        if (b.lambda.is_exact() != exact_) throw UsageError("descriptor mixes exact and floating eigenvalues");
        total += b.size * b.count;
    }
    if (total != n)
        throw UsageError("descriptor blocks cover dimension " + std::to_string(total) + " but n = " +
                         std::to_string(n));

    for (auto& b : blocks) {
        auto it = std::find_if(blocks_.begin(), blocks_.end(), [&](const JordanBlocks& e) {
            return e.size == b.size && e.lambda.same(b.lambda, tol_);
        });
        if (it != blocks_.end())
            it->count += b.count;
        else
            blocks_.push_back(std::move(b));
    }
    std::sort(blocks_.begin(), blocks_.end(), [&](const JordanBlocks& a, const JordanBlocks& b) {
        const int c = a.lambda.compare(b.lambda, tol_);
        if (c != 0) return c < 0;
        return a.size < b.size;
    });

    if (real_) {
        for (const auto& b : blocks_) {
            if (b.lambda.imag_sign(tol_) == 0) continue;
            const Eigenvalue partner = b.lambda.conj();
            const bool found = std::any_of(blocks_.begin(), blocks_.end(), [&](const JordanBlocks& e) {
                return e.size == b.size && e.count == b.count && e.lambda.same(partner, tol_);
            });
            if (!found)
                throw UsageError("real descriptor lacks the conjugate of eigenvalue " + b.lambda.str() +
                                 " (block size " + std::to_string(b.size) + ")");
        }
    }
}

std::vector<std::pair<Eigenvalue, std::size_t>> SpectrumDescriptor::eigenvalues() const {
    std::vector<std::pair<Eigenvalue, std::size_t>> out;
    for (const auto& b : blocks_) {
        if (!out.empty() && out.back().first.same(b.lambda, tol_))
            out.back().second += b.size * b.count;
        else
            out.emplace_back(b.lambda, b.size * b.count);
    }
    return out;
}

SpectralSplit split_dims(const SpectrumDescriptor& desc, double tol) {
    SpectralSplit s;
    for (const auto& b : desc.blocks()) {
        const std::size_t dim = b.size * b.count;
        switch (b.lambda.real_sign(tol)) {
            case 1:
                s.dim_plus += dim;
                break;
            case -1:
                s.dim_minus += dim;
                break;
            default:
                s.dim_zero += dim;
                s.center_blocks.push_back(b);
        }
        if (!b.lambda.is_exact()) {
            const double m = std::fabs(std::fabs(b.lambda.approx().re) - tol);
            s.margin = s.margin ? std::min(*s.margin, m) : m;
        }
    }
    return s;
}

}  // namespace flowclass::spectral
