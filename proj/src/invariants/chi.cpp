#include "flowclass/invariants/chi.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace flowclass::invariants {

std::vector<std::int64_t> gcd_closure(const std::vector<std::int64_t>& p) {
    std::set<std::int64_t> closed(p.begin(), p.end());
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<std::int64_t> cur(closed.begin(), closed.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j)
                grew |= closed.insert(std::gcd(cur[i], cur[j])).second;
    }
    return {closed.begin(), closed.end()};
}

std::vector<Frequency> singular_values(const RationalClass& cls) {
    std::vector<Frequency> out;
    for (std::int64_t g : gcd_closure(cls.p)) out.push_back(scaled(cls.beta, g));
    return out;
}

Frequency chi(const std::vector<std::size_t>& support, const RationalClass& cls) {
    if (support.empty()) throw UsageError("chi is undefined on an empty support");
    std::int64_t g = 0;
    for (std::size_t i : support) {
        if (i >= cls.p.size())
            throw UsageError("support index " + std::to_string(i) + " out of range for a class of size " +
                             std::to_string(cls.p.size()));
        g = std::gcd(g, cls.p[i]);
    }
    return scaled(cls.beta, g);
}

std::size_t preimage_dim(const RationalClass& cls, const Frequency& q, std::size_t dimD) {
    const auto g = integer_ratio(q, cls.beta);
    const auto closure = gcd_closure(cls.p);
    if (!g || !std::binary_search(closure.begin(), closure.end(), *g))
        throw UsageError(q.str() + " is not a singular value of the class with beta " + cls.beta.str());
    return dimD + static_cast<std::size_t>(
                      std::count_if(cls.p.begin(), cls.p.end(), [&](std::int64_t pi) { return pi % *g == 0; }));
}

ChiProfile chi_profile(const RationalClass& cls, std::size_t dimD) {
    ChiProfile prof;
    prof.singular_values = singular_values(cls);
    for (const auto& q : prof.singular_values) prof.preimage_dims.push_back(preimage_dim(cls, q, dimD));
    return prof;
}

std::vector<std::int64_t> recover_p(const std::vector<Frequency>& singular,
                                    const std::function<std::size_t(const Frequency&)>& dim_oracle,
                                    std::size_t dimD) {
    if (singular.empty()) throw UsageError("recover_p needs at least one singular value");
    const Frequency beta = *std::min_element(singular.begin(), singular.end(),
                                             [](const Frequency& a, const Frequency& b) { return a.compare(b, 0.0) < 0; });
    std::vector<std::pair<std::int64_t, std::size_t>> g;  // (multiplier, index into singular)
    for (std::size_t i = 0; i < singular.size(); ++i) {
        const auto k = integer_ratio(singular[i], beta);
        if (!k) throw InconsistentInvariants(singular[i].str() + " is not an integer multiple of " + beta.str());
        g.emplace_back(*k, i);
    }
    std::sort(g.begin(), g.end(), std::greater<>());

    std::vector<std::pair<std::int64_t, long long>> counts;
    for (const auto& [gi, idx] : g) {
        const std::size_t dim = dim_oracle(singular[idx]);
        if (dim < dimD) throw InconsistentInvariants("preimage dimension below dim D at " + singular[idx].str());
        long long c = static_cast<long long>(dim - dimD);
        for (const auto& [gj, cj] : counts)
            if (gj % gi == 0) c -= cj;
        if (c < 0)
            throw InconsistentInvariants("negative multiplicity " + std::to_string(c) + " for multiplier " +
                                         std::to_string(gi));
        counts.emplace_back(gi, c);
    }

    std::vector<std::int64_t> p;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) p.insert(p.end(), static_cast<std::size_t>(it->second), it->first);
    std::int64_t d = 0;
    for (auto v : p) d = std::gcd(d, v);
    if (d != 1) throw InconsistentInvariants("recovered multipliers have gcd " + std::to_string(d) + ", expected 1");
    return p;
}

}  // namespace flowclass::invariants
