#include "flowclass/invariants/signature.hpp"

#include <algorithm>
#include <cmath>

namespace flowclass::invariants {

using spectral::JordanBlocks;

namespace {

std::string block_text(const JordanBlocks& b) {
    return "(" + b.lambda.str() + ", m=" + std::to_string(b.size) + ", count=" + std::to_string(b.count) + ")";
}

}  // namespace

ConjugacySignature conjugacy_signature(const spectral::SpectrumDescriptor& desc, double tol) {
    const double t = tol > 0.0 ? tol : desc.tolerance();
    const spectral::SpectralSplit split = spectral::split_dims(desc, t);
    ConjugacySignature sig;
    sig.n = desc.dimension();
    sig.dim_plus = split.dim_plus;
    sig.dim_minus = split.dim_minus;
    sig.center = split.center_blocks;
    sig.tol = t;
    // Center eigenvalues share Re = 0, so the descriptor order is already (|Im|, sign, m).
    std::stable_sort(sig.center.begin(), sig.center.end(), [&](const JordanBlocks& a, const JordanBlocks& b) {
        const int c = a.lambda.imag().abs().compare(b.lambda.imag().abs(), t);
        if (c != 0) return c < 0;
        const int sa = a.lambda.imag_sign(t), sb = b.lambda.imag_sign(t);
        if (sa != sb) return sa > sb;
        return a.size < b.size;
    });
    return sig;
}

Decision decide_conjugate(const ConjugacySignature& a, const ConjugacySignature& b) {
    auto differ = [](std::string what) { return Decision{false, std::move(what)}; };
    if (a.n != b.n) return differ("dimension " + std::to_string(a.n) + " vs " + std::to_string(b.n));
    if (a.dim_plus != b.dim_plus)
        return differ("dim V+ " + std::to_string(a.dim_plus) + " vs " + std::to_string(b.dim_plus));
    if (a.dim_minus != b.dim_minus)
        return differ("dim V- " + std::to_string(a.dim_minus) + " vs " + std::to_string(b.dim_minus));
    const double tol = std::max(a.tol, b.tol);
    const std::size_t common = std::min(a.center.size(), b.center.size());
    for (std::size_t k = 0; k < common; ++k) {
        const JordanBlocks& x = a.center[k];
        const JordanBlocks& y = b.center[k];
        if (!x.lambda.same(y.lambda, tol)) return differ("center eigenvalue " + x.lambda.str() + " vs " + y.lambda.str());
        if (x.size != y.size)
            return differ("Jordan block size at " + x.lambda.str() + ": " + std::to_string(x.size) + " vs " +
                          std::to_string(y.size));
        if (x.count != y.count)
            return differ("number of size-" + std::to_string(x.size) + " blocks at " + x.lambda.str() + ": " +
                          std::to_string(x.count) + " vs " + std::to_string(y.count));
    }
    if (a.center.size() > common) return differ("center block " + block_text(a.center[common]) + " vs none");
    if (b.center.size() > common) return differ("center block none vs " + block_text(b.center[common]));
    return {true, ""};
}

}  // namespace flowclass::invariants
