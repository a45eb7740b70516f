#include "flowclass/spectral/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flowclass/numkit/roots.hpp"

namespace flowclass::spectral {

using numkit::Integer;
using numkit::PolyD;

namespace {

std::vector<Integer> divisors(const Integer& n) {
    if (n > Integer(1000000000000LL))
        throw FallbackNeeded("leading coefficient " + n.str() + " too large for rational factor search");
    std::vector<Integer> small, large;
    for (Integer d(1); d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

bool near_integer(double v, Integer& out) {
    if (!std::isfinite(v)) return false;
    const double r = std::round(v);
    if (std::fabs(v - r) > 1e-6 * (1.0 + std::fabs(v))) return false;
    out = Integer(r);
    return true;
}

// Splits a square-free rational polynomial into linear and irreducible quadratic
// factors. Candidates come from floating roots; each is certified by exact division.
std::vector<PolyQ> split_squarefree(const PolyQ& s) {
    std::vector<PolyQ> factors;
    PolyQ rest = s.monic();
    if (rest.degree() <= 0) return factors;

    const auto ints = numkit::primitive_integer_coeffs(rest);
    const std::vector<Integer> divs = divisors(ints.back());
    const std::vector<ComplexD> roots = numkit::polynomial_roots(numkit::to_double(rest));
    std::vector<bool> used(roots.size(), false);

    for (std::size_t k = 0; k < roots.size(); ++k) {
        const ComplexD z = roots[k];
        if (std::fabs(z.im) > 1e-6 * (1.0 + numkit::abs(z))) continue;
        for (const Integer& alpha : divs) {
            Integer u;
            if (!near_integer(z.re * alpha.convert_to<double>(), u)) continue;
            const Rational cand = numkit::make_rational(u, alpha);
            if (!rest.eval(cand).is_zero()) continue;
            const PolyQ lin({Rational(-cand), Rational(1)});
            factors.push_back(lin);
            rest = div_rem(rest, lin).first;
            used[k] = true;
            break;
        }
    }

    for (std::size_t i = 0; i < roots.size() && rest.degree() > 0; ++i) {
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < roots.size() && !used[i]; ++j) {
            if (used[j]) continue;
            const ComplexD b = -(roots[i] + roots[j]);
            const ComplexD c = roots[i] * roots[j];
            if (std::fabs(b.im) > 1e-6 * (1.0 + numkit::abs(b)) || std::fabs(c.im) > 1e-6 * (1.0 + numkit::abs(c)))
                continue;
            for (const Integer& alpha : divs) {
                const double a = alpha.convert_to<double>();
                Integer bb, cc;
                if (!near_integer(b.re * a, bb) || !near_integer(c.re * a, cc)) continue;
                const PolyQ quad({numkit::make_rational(cc, alpha), numkit::make_rational(bb, alpha), Rational(1)});
                auto [q, r] = div_rem(rest, quad);
                if (!r.is_zero()) continue;
                factors.push_back(quad);
                rest = q;
                used[i] = used[j] = true;
                break;
            }
        }
    }

    if (rest.degree() > 0)
        throw FallbackNeeded("characteristic polynomial factor " + numkit::to_string(rest) +
                             " does not split into linear and quadratic factors over Q");
    return factors;
}

std::vector<JordanCount> checked_counts(std::vector<JordanCount> counts, std::size_t multiplicity,
                                        const std::string& what) {
    std::size_t total = 0;
    for (const auto& c : counts) total += c.size * c.count;
    if (total != multiplicity)
        throw InconsistentInvariants("Jordan counts for " + what + " cover " + std::to_string(total) +
                                     " dimensions but the algebraic multiplicity is " +
                                     std::to_string(multiplicity));
    return counts;
}

struct Cluster {
    ComplexD center;
    std::size_t size = 0;
    std::vector<ComplexD> members;
    // Radius within which the members are indistinguishable from a single multiple root.
    double spread = 0.0;
};

ComplexD mean(const std::vector<ComplexD>& zs) {
    ComplexD c(0.0);
    for (const auto& z : zs) c += z;
    return c * ComplexD(1.0 / static_cast<double>(zs.size()));
}

std::vector<Cluster> cluster_roots(const std::vector<ComplexD>& roots, double radius) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (numkit::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);
    std::vector<Cluster> out;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::ptrdiff_t>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[r])].members.push_back(roots[i]);
    }
    for (auto& c : out) {
        c.size = c.members.size();
        c.center = mean(c.members);
    }
    return out;
}

// Coefficient noise of the floating characteristic polynomial, relative to
// sum |a_i| |z|^i. The trace recurrence loses a few digits beyond eps.
constexpr double kCoeffNoise = 1024.0 * 2.220446049250313e-16;

// Expected distance of k computed roots from a true k-fold root at c:
// (noise(c) / |p^(k)(c) / k!|)^(1/k), with p^(k)(c)/k! the product over the other roots.
double multiple_root_radius(const PolyD& p, ComplexD c, std::size_t k, const std::vector<ComplexD>& others) {
    double noise = 0.0, zk = 1.0;
    const double az = numkit::abs(c);
    for (const double a : p.coeffs()) {
        noise += std::fabs(a) * zk;
        zk *= az;
    }
    noise *= kCoeffNoise;
    double lead = 1.0;
    for (const auto& r : others) lead *= numkit::abs(c - r);
    if (lead == 0.0) return 0.0;
    return std::pow(noise / lead, 1.0 / static_cast<double>(k));
}

// Agglomerates clusters whose combined spread is explained by a single
// multiple root, then locates that root as the simple root of p^(k-1).
void merge_multiple_roots(const PolyD& p, std::vector<Cluster>& clusters) {
    auto extent_of = [](const std::vector<ComplexD>& zs, ComplexD c) {
        double e = 0.0;
        for (const auto& z : zs) e = std::max(e, numkit::abs(z - c));
        return e;
    };
    for (;;) {
        bool merged = false;
        std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> pairs;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j)
                pairs.push_back({numkit::abs(clusters[i].center - clusters[j].center), {i, j}});
        std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [d, ij] : pairs) {
            const auto [i, j] = ij;
            // Candidate group: every cluster near the pair, so that the remaining roots are separated from it.
            std::vector<ComplexD> seed = clusters[i].members;
            seed.insert(seed.end(), clusters[j].members.begin(), clusters[j].members.end());
            const ComplexD c0 = mean(seed);
            const double reach = 2.0 * extent_of(seed, c0);
            std::vector<std::size_t> group;
            std::vector<ComplexD> members, rest;
            for (std::size_t k = 0; k < clusters.size(); ++k) {
                const bool in = k == i || k == j || numkit::abs(clusters[k].center - c0) <= reach;
                if (in) group.push_back(k);
                auto& dst = in ? members : rest;
                dst.insert(dst.end(), clusters[k].members.begin(), clusters[k].members.end());
            }
            const ComplexD c = mean(members);
            const double extent = extent_of(members, c);
            if (std::any_of(rest.begin(), rest.end(), [&](const ComplexD& r) { return numkit::abs(r - c) <= 2.0 * extent; }))
                continue;
            const double rho = multiple_root_radius(p, c, members.size(), rest);
            if (extent > 8.0 * rho) continue;
            Cluster& keep = clusters[group.front()];
            keep.members = std::move(members);
            keep.size = keep.members.size();
            keep.center = c;
            keep.spread = 8.0 * rho;
            for (auto it = group.rbegin(); it != std::prev(group.rend()); ++it)
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(*it));
            merged = true;
            break;
        }
        if (!merged) break;
    }

    for (auto& cl : clusters) {
        if (cl.size < 2) continue;
        PolyD q = p;
        for (std::size_t k = 1; k < cl.size; ++k) q = q.derivative();
        const PolyD dq = q.derivative();
        ComplexD z = cl.center;
        bool ok = false;
        for (int it = 0; it < 50; ++it) {
            const ComplexD den = dq.eval(z);
            if (numkit::abs(den) == 0.0) break;
            const ComplexD step = q.eval(z) / den;
            z -= step;
            if (!std::isfinite(z.re) || !std::isfinite(z.im)) break;
            if (numkit::abs(step) <= 4.0 * 2.220446049250313e-16 * (1.0 + numkit::abs(z))) {
                ok = true;
                break;
            }
        }
        const double allowed = std::max(cl.spread, numkit::abs(cl.members.front() - cl.center)) * 2.0;
        if (ok && numkit::abs(z - cl.center) <= allowed) cl.center = z;
        cl.spread = std::max(cl.spread, allowed);
    }
}

}  // namespace

std::vector<EigenvalueMultiplicity> eigenvalues(const MatrixQ& a) {
    const PolyQ p = numkit::char_poly(a);
    const std::vector<PolyQ> parts = numkit::squarefree_decomposition(p);
    std::vector<EigenvalueMultiplicity> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (const PolyQ& f : split_squarefree(parts[i])) {
            for (auto& root : roots_of_factor(f)) out.push_back({Eigenvalue(std::move(root)), i + 1, f});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value.compare(y.value, 0.0) < 0; });
    return out;
}

std::vector<EigenvalueMultiplicity> eigenvalues(const MatrixD& a, const SpectralOptions& opts) {
    const double radius = opts.resolved_tol(a);
    const PolyD p = numkit::char_poly(a);
    const std::vector<ComplexD> roots = numkit::polynomial_roots(p, opts.max_iter);
    std::vector<Cluster> clusters = cluster_roots(roots, radius);
    merge_multiple_roots(p, clusters);

    for (auto& c : clusters)
        if (std::fabs(c.center.im) <= std::max(radius, c.spread)) c.center.im = 0.0;
    std::vector<bool> paired(clusters.size(), false);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (paired[i] || clusters[i].center.im <= 0.0) continue;
        std::ptrdiff_t best = -1;
        double best_d = 0.0;
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            if (paired[j] || clusters[j].center.im >= 0.0 || clusters[j].size != clusters[i].size) continue;
            const double d = numkit::abs(clusters[j].center - numkit::conj(clusters[i].center));
            if (best < 0 || d < best_d) {
                best = static_cast<std::ptrdiff_t>(j);
                best_d = d;
            }
        }
        if (best < 0 || best_d > 10.0 * radius + 1e-6 * numkit::abs(clusters[i].center))
            throw InconsistentInvariants("eigenvalue cluster " + numkit::to_string(clusters[i].center) +
                                         " has no conjugate partner");
        Cluster& partner = clusters[static_cast<std::size_t>(best)];
        const double re = 0.5 * (clusters[i].center.re + partner.center.re);
        const double im = 0.5 * (clusters[i].center.im - partner.center.im);
        clusters[i].center = {re, im};
        partner.center = {re, -im};
        paired[i] = paired[static_cast<std::size_t>(best)] = true;
    }
    for (std::size_t i = 0; i < clusters.size(); ++i)
        if (!paired[i] && clusters[i].center.im != 0.0)
            throw InconsistentInvariants("eigenvalue cluster " + numkit::to_string(clusters[i].center) +
                                         " has no conjugate partner");

    std::vector<EigenvalueMultiplicity> out;
    for (const auto& c : clusters) out.push_back({Eigenvalue(c.center), c.size, std::nullopt});
    std::sort(out.begin(), out.end(),
              [&](const auto& x, const auto& y) { return x.value.compare(y.value, 0.0) < 0; });
    return out;
}

SpectralSplit split_dims(std::span<const EigenvalueMultiplicity> eigs, double tol) {
    SpectralSplit s;
    for (const auto& e : eigs) {
        switch (e.value.real_sign(tol)) {
            case 1:
                s.dim_plus += e.multiplicity;
                break;
            case -1:
                s.dim_minus += e.multiplicity;
                break;
            default:
                s.dim_zero += e.multiplicity;
        }
        if (!e.value.is_exact()) {
            const double m = std::fabs(std::fabs(e.value.approx().re) - tol);
            s.margin = s.margin ? std::min(*s.margin, m) : m;
        }
    }
    return s;
}

std::vector<JordanCount> counts_from_ranks(std::span<const std::size_t> ranks, std::size_t per_root) {
    if (ranks.size() < 2) throw UsageError("rank sequence needs at least two terms");
    if (per_root == 0) throw UsageError("per_root must be positive");
    for (std::size_t k = 1; k < ranks.size(); ++k)
        if (ranks[k] > ranks[k - 1])
            throw InconsistentInvariants("rank sequence is not non-increasing at k = " + std::to_string(k));
    if (ranks[ranks.size() - 1] != ranks[ranks.size() - 2])
        throw InconsistentInvariants("rank sequence has not stabilized; extend kmax");
    const std::size_t n = ranks.front();
    std::vector<long long> d(ranks.size());
    for (std::size_t k = 0; k < ranks.size(); ++k) {
        const std::size_t kernel = n - ranks[k];
        if (kernel % per_root != 0)
            throw InconsistentInvariants("kernel dimension " + std::to_string(kernel) + " not divisible by " +
                                         std::to_string(per_root));
        d[k] = static_cast<long long>(kernel / per_root);
    }
    std::vector<JordanCount> out;
    for (std::size_t m = 1; m + 1 < d.size(); ++m) {
        const long long c = 2 * d[m] - d[m - 1] - d[m + 1];
        if (c < 0)
            throw InconsistentInvariants("rank sequence gives negative block count at m = " + std::to_string(m));
        if (c > 0) out.push_back({m, static_cast<std::size_t>(c)});
    }
    return out;
}

std::vector<JordanCount> jordan_counts(const MatrixQ& a, const ExactEigenvalue& lambda) {
    const PolyQ f = lambda.minimal_polynomial();
    const auto ranks = numkit::factor_power_rank_sequence(a, f, a.size() + 1);
    if (ranks[1] == ranks[0]) throw UsageError(lambda.str() + " is not an eigenvalue");
    return counts_from_ranks(ranks, static_cast<std::size_t>(f.degree()));
}

std::vector<JordanCount> jordan_counts(const MatrixCQ& a, const numkit::ComplexQ& lambda) {
    const auto ranks = numkit::power_rank_sequence(a, lambda, a.size() + 1);
    if (ranks[1] == ranks[0]) throw UsageError(numkit::to_string(lambda) + " is not an eigenvalue");
    return counts_from_ranks(ranks);
}

std::vector<JordanCount> jordan_counts(const MatrixD& a, ComplexD lambda, double tol) {
    const auto ranks = numkit::power_rank_sequence(a, lambda, a.size() + 1, tol);
    if (ranks[1] == ranks[0]) throw UsageError(numkit::to_string(lambda) + " is not an eigenvalue at this tolerance");
    return counts_from_ranks(ranks);
}

std::vector<JordanCount> jordan_counts(const MatrixCD& a, ComplexD lambda, double tol) {
    const auto ranks = numkit::power_rank_sequence(a, lambda, a.size() + 1, tol);
    if (ranks[1] == ranks[0]) throw UsageError(numkit::to_string(lambda) + " is not an eigenvalue at this tolerance");
    return counts_from_ranks(ranks);
}

SpectrumDescriptor spectrum_descriptor(const MatrixQ& a) {
    const auto eigs = eigenvalues(a);
    std::vector<JordanBlocks> blocks;
    // Both roots of a quadratic factor share one rank sequence.
    std::vector<std::pair<PolyQ, std::vector<JordanCount>>> cache;
    for (const auto& e : eigs) {
        auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& c) { return c.first == *e.factor; });
        if (it == cache.end()) {
            auto counts = checked_counts(jordan_counts(a, e.value.exact()), e.multiplicity, e.value.str());
            cache.emplace_back(*e.factor, std::move(counts));
            it = std::prev(cache.end());
        }
        for (const auto& c : it->second) blocks.push_back({e.value, c.size, c.count});
    }
    return SpectrumDescriptor(a.size(), std::move(blocks), true);
}

SpectrumDescriptor spectrum_descriptor(const MatrixD& a, const SpectralOptions& opts) {
    const auto eigs = eigenvalues(a, opts);
    std::vector<JordanBlocks> blocks;
    for (const auto& e : eigs) {
        const ComplexD z = e.value.approx();
        if (z.im < 0.0) continue;
        auto counts = checked_counts(jordan_counts(a, z, opts.rank_tol), e.multiplicity, e.value.str());
        for (const auto& c : counts) {
            blocks.push_back({e.value, c.size, c.count});
            if (z.im > 0.0) blocks.push_back({e.value.conj(), c.size, c.count});
        }
    }
    return SpectrumDescriptor(a.size(), std::move(blocks), true, opts.resolved_tol(a));
}

}  // namespace flowclass::spectral
