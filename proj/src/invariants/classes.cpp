#include "flowclass/invariants/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace flowclass::invariants {

using numkit::Integer;
using numkit::Rational;
using numkit::Surd;

namespace {

constexpr std::int64_t kMaxMultiplier = std::int64_t(1) << 62;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out) || out > kMaxMultiplier)
        throw NumericalError("class multipliers overflow 64-bit integers");
    return out;
}

std::int64_t to_int64(const Integer& v) {
    if (v > Integer(kMaxMultiplier) || v < Integer(-kMaxMultiplier))
        throw NumericalError("class multiplier " + v.str() + " exceeds 64-bit range");
    return v.convert_to<std::int64_t>();
}

void sort_class(RationalClass& c) {
    std::vector<std::size_t> order(c.p.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c.p[a] < c.p[b]; });
    RationalClass s{c.beta, {}, {}, {}};
    for (std::size_t i : order) {
        s.p.push_back(c.p[i]);
        s.members.push_back(c.members[i]);
        if (!c.evidence.empty()) s.evidence.push_back(c.evidence[i]);
    }
    c = std::move(s);
}

std::vector<RationalClass> exact_classes(const std::vector<Frequency>& betas) {
    std::map<Integer, std::vector<std::size_t>> by_radicand;
    for (std::size_t i = 0; i < betas.size(); ++i) by_radicand[betas[i].exact().radicand].push_back(i);
    std::vector<RationalClass> out;
    for (const auto& [radicand, idx] : by_radicand) {
        Rational g(0);
        for (std::size_t i : idx) g = numkit::rational_gcd(g, betas[i].exact().coeff);
        RationalClass c;
        c.beta = Frequency(Surd(g, radicand));
        for (std::size_t i : idx) {
            const Rational q = betas[i].exact().coeff / g;
            c.p.push_back(to_int64(numerator(q)));
            c.members.push_back(betas[i]);
        }
        sort_class(c);
        out.push_back(std::move(c));
    }
    return out;
}

struct Match {
    bool ok = false;
    RatioEvidence ev;
};

Match ratio_match(double a, double b, int qmax, double tol) {
    const double r = b / a;
    const auto [n, d] = best_convergent(r, qmax);
    Match m;
    m.ev.num = n;
    m.ev.den = d;
    if (n <= 0) return m;
    m.ev.rel_error = std::fabs(r - static_cast<double>(n) / static_cast<double>(d)) / r;
    m.ok = m.ev.rel_error < tol;
    return m;
}

std::vector<RationalClass> float_classes(const std::vector<Frequency>& betas, int qmax, double tol) {
    const std::size_t n = betas.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = betas[i].approx();

    std::vector<std::vector<bool>> accepted(n, std::vector<bool>(n, false));
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        accepted[i][i] = true;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double lo = std::min(v[i], v[j]), hi = std::max(v[i], v[j]);
            if (ratio_match(lo, hi, qmax, tol).ok) {
                accepted[i][j] = accepted[j][i] = true;
                parent[find(i)] = find(j);
            }
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

    std::vector<RationalClass> out;
    for (auto& [root, idx] : groups) {
        for (std::size_t a : idx)
            for (std::size_t b : idx) {
                if (accepted[a][b]) continue;
                for (std::size_t c : idx)
                    if (accepted[a][c] && accepted[c][b])
                        throw InconsistentInvariants(
                            "rational ratio test is not transitive: " + betas[a].str() + " ~ " + betas[c].str() +
                            " and " + betas[c].str() + " ~ " + betas[b].str() + " but not " + betas[a].str() +
                            " ~ " + betas[b].str());
                throw InconsistentInvariants("rational ratio test is not transitive within the class of " +
                                             betas[a].str());
            }

        const std::size_t ref = *std::min_element(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
        std::vector<Match> matches;
        std::int64_t l = 1;
        for (std::size_t j : idx) {
            matches.push_back(ratio_match(v[ref], v[j], qmax, tol));
            l = checked_mul(l / std::gcd(l, matches.back().ev.den), matches.back().ev.den);
        }
        RationalClass c;
        std::int64_t g = 0;
        for (const auto& m : matches) {
            c.p.push_back(checked_mul(m.ev.num, l / m.ev.den));
            g = std::gcd(g, c.p.back());
        }
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            c.p[k] /= g;
            const double pk = static_cast<double>(c.p[k]);
            num += pk * v[idx[k]];
            den += pk * pk;
            c.members.push_back(betas[idx[k]]);
            c.evidence.push_back(matches[k].ev);
        }
        c.beta = Frequency(num / den);
        sort_class(c);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::pair<std::int64_t, std::int64_t> best_convergent(double x, int qmax) {
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("convergents need a positive finite ratio");
    if (qmax < 1) throw UsageError("qmax must be at least 1");
    // h_{k} = a_k h_{k-1} + h_{k-2}, same for k.
    double h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    double rest = x;
    std::int64_t best_h = static_cast<std::int64_t>(std::floor(x)), best_k = 1;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(rest);
        const double h = a * h1 + h2;
        const double k = a * k1 + k2;
        if (k > qmax || h > 9.0e15) break;
        best_h = static_cast<std::int64_t>(h);
        best_k = static_cast<std::int64_t>(k);
        const double frac = rest - a;
        if (frac < 1e-15) break;
        rest = 1.0 / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    return {best_h, best_k};
}

std::vector<RationalClass> rational_classes(const std::vector<Frequency>& betas, int qmax, double tol) {
    if (qmax < 1) throw UsageError("qmax must be at least 1");
    if (betas.empty()) return {};
    const bool exact = betas.front().is_exact();
    for (const auto& b : betas) {
        if (b.is_exact() != exact) throw UsageError("frequencies mix exact and floating values");
        if (!(b.approx() > 0.0)) throw UsageError("frequency " + b.str() + " is not positive");
    }
    std::vector<RationalClass> out = exact ? exact_classes(betas) : float_classes(betas, qmax, tol);
    std::sort(out.begin(), out.end(), [](const RationalClass& a, const RationalClass& b) {
        return a.members.front().compare(b.members.front(), 0.0) < 0;
    });
    return out;
}

std::vector<Frequency> center_frequencies(const spectral::SpectrumDescriptor& desc, double tol, std::size_t& dimD) {
    dimD = 0;
    std::vector<Frequency> out;
    for (const auto& b : desc.blocks()) {
        if (!b.lambda.is_center(tol)) continue;
        const int s = b.lambda.imag_sign(tol);
        if (s == 0) {
            dimD += b.count;
        } else if (s > 0 || !desc.is_real()) {
            for (std::size_t c = 0; c < b.count; ++c) out.push_back(b.lambda.imag().abs());
        }
    }
    return out;
}

BoundedStructure bounded_structure(const spectral::SpectrumDescriptor& desc, int qmax, double tol) {
    BoundedStructure s;
    const std::vector<Frequency> freqs = center_frequencies(desc, desc.tolerance(), s.dimD);
    s.dimB = s.dimD + freqs.size();
    for (auto& c : rational_classes(freqs, qmax, tol)) {
        if (c.members.size() >= 2)
            s.classes.push_back(std::move(c));
        else
            s.unclassed.push_back(c.members.front());
    }
    return s;
}

Frequency scaled(const Frequency& beta, std::int64_t g) {
    if (beta.is_exact()) return Frequency(Surd(beta.exact().coeff * Rational(g), beta.exact().radicand));
    return Frequency(beta.approx() * static_cast<double>(g));
}

std::optional<std::int64_t> integer_ratio(const Frequency& q, const Frequency& beta, double tol) {
    if (q.is_exact() && beta.is_exact()) {
        const Surd& a = q.exact();
        const Surd& b = beta.exact();
        if (b.is_zero() || (!a.is_zero() && a.radicand != b.radicand)) return std::nullopt;
        const Rational r = a.coeff / b.coeff;
        if (denominator(r) != 1 || r <= 0) return std::nullopt;
        return to_int64(numerator(r));
    }
    const double r = q.approx() / beta.approx();
    const double k = std::round(r);
    if (!(k >= 1.0) || std::fabs(r - k) > tol * std::max(1.0, r) || k > 9.0e15) return std::nullopt;
    return static_cast<std::int64_t>(k);
}

}  // namespace flowclass::invariants
