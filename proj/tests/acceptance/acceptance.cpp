// Acceptance suite: one PASS/FAIL line per criterion. Run from the tests/ directory
// (or pass it as the first argument) so the golden cases resolve.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "flowclass/cli/app.hpp"
#include "flowclass/cli/report.hpp"
#include "flowclass/flowsim/orbit.hpp"
#include "flowclass/flowsim/witness.hpp"
#include "flowclass/invariants/chi.hpp"
#include "flowclass/invariants/signature.hpp"
#include "flowclass/invariants/zcalc.hpp"
#include "flowclass/spectral/spectral.hpp"
#include "../support/generators.hpp"

using namespace flowclass;
using flowclass::testing::BlockSpec;
using flowclass::testing::Rng;
using flowclass::testing::uniform_int;
using numkit::Integer;
using numkit::MatrixD;
using numkit::MatrixQ;
using numkit::PolyQ;
using numkit::Rational;
using numkit::Surd;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs >= limit_s) {
        o.ok = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(limit_s)) + " s budget";
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string count_text(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

spectral::SpectrumDescriptor desc_of(const MatrixQ& a) { return spectral::spectrum_descriptor(a); }

bool same_signature(const invariants::ConjugacySignature& a, const invariants::ConjugacySignature& b) {
    if (a.n != b.n || a.dim_plus != b.dim_plus || a.dim_minus != b.dim_minus || a.center.size() != b.center.size())
        return false;
    for (std::size_t i = 0; i < a.center.size(); ++i) {
        const auto& x = a.center[i];
        const auto& y = b.center[i];
        if (!x.lambda.is_exact() || !y.lambda.is_exact()) return false;
        if (!(x.lambda.exact() == y.lambda.exact()) || x.size != y.size || x.count != y.count) return false;
    }
    return true;
}

// Structural truth of realize(blocks): hyperbolic dimensions and the center data as (c, size)
// with c the constant term of t^2 + c (or "0" for a zero eigenvalue).
struct Truth {
    std::size_t n = 0, plus = 0, minus = 0;
    std::multiset<std::pair<std::string, std::size_t>> center;
    bool operator==(const Truth&) const = default;
};

Truth truth_of(const std::vector<BlockSpec>& blocks) {
    Truth t;
    for (const auto& b : blocks) {
        const double c0 = numkit::to_double(b.factor.coeff(0));
        if (b.factor.degree() == 1) {
            t.n += b.size;
            if (c0 == 0)
                t.center.insert({"0", b.size});
            else
                (c0 < 0 ? t.plus : t.minus) += b.size;
            continue;
        }
        t.n += 2 * b.size;
        const double c1 = numkit::to_double(b.factor.coeff(1));
        const double disc = c1 * c1 - 4 * c0;
        if (disc < 0) {
            if (c1 == 0)
                t.center.insert({b.factor.coeff(0).str(), b.size});
            else
                (c1 < 0 ? t.plus : t.minus) += 2 * b.size;
        } else {
            for (double root : {(-c1 + std::sqrt(disc)) / 2, (-c1 - std::sqrt(disc)) / 2})
                (root > 0 ? t.plus : t.minus) += b.size;
        }
    }
    return t;
}

// Same real-part signs, different values.
BlockSpec perturb_hyperbolic(Rng& rng, const BlockSpec& b) {
    if (truth_of({b}).center.size() == 1) return b;
    BlockSpec out = b;
    const Rational scale = numkit::make_rational(Integer(uniform_int(rng, 1, 4)), Integer(uniform_int(rng, 1, 3)));
    if (b.factor.degree() == 1) {
        out.factor = PolyQ({Rational(b.factor.coeff(0) * scale), Rational(1)});
    } else if (!b.factor.coeff(1).is_zero()) {
        const Rational a = -b.factor.coeff(1) / 2 * scale;
        const Rational w(uniform_int(rng, 1, 3));
        out.factor = PolyQ({Rational(a * a + w * w), Rational(-2 * a), Rational(1)});
    } else {
        static const long ds[] = {2, 3, 5, 6, 7};
        out.factor = PolyQ({Rational(-ds[uniform_int(rng, 0, 4)]), Rational(0), Rational(1)});
    }
    return out;
}

MatrixQ rotations_q(const std::vector<Rational>& freqs) {
    MatrixQ a(2 * freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        a(2 * k, 2 * k + 1) = -freqs[k];
        a(2 * k + 1, 2 * k) = freqs[k];
    }
    return a;
}

std::vector<std::int64_t> random_p(Rng& rng, std::size_t max_len, long max_val, bool coprime) {
    for (;;) {
        const auto len = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_len)));
        std::vector<std::int64_t> p;
        std::int64_t g = 0;
        for (std::size_t i = 0; i < len; ++i) {
            p.push_back(uniform_int(rng, 1, max_val));
            g = std::gcd(g, p.back());
        }
        if (coprime && g != 1) continue;
        std::sort(p.begin(), p.end());
        return p;
    }
}

// One class of rotation blocks at beta * p_i; x0 is nonzero exactly on the chosen blocks.
// Returns the relative error of the simulated minimal period against 2 pi / chi.
double period_error(Rational beta, const std::vector<std::int64_t>& p, const std::vector<bool>& on, Rng& rng,
                    std::string& why) {
    std::vector<Rational> freqs;
    for (auto v : p) freqs.push_back(beta * Rational(v));
    const MatrixQ a = rotations_q(freqs);
    auto bs = invariants::bounded_structure(desc_of(a));
    // A lone frequency is left unclassed; it forms the class p = (1) on its own.
    if (bs.classes.empty() && bs.unclassed.size() == 1)
        bs.classes.push_back({bs.unclassed[0], {1}, {bs.unclassed[0]}, {}});
    if (bs.classes.size() != 1 || bs.classes[0].p.size() != p.size()) {
        why = "expected one class of " + std::to_string(p.size());
        return INFINITY;
    }
    const auto& cls = bs.classes[0];
    std::uniform_real_distribution<double> u(0.5, 2.0);
    std::vector<double> x0(a.size(), 0.0);
    std::vector<bool> used(p.size(), false);
    std::vector<std::size_t> support;
    // Map class members back to blocks with the same frequency.
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
        std::size_t k = 0;
        while (used[k] || std::fabs(numkit::to_double(freqs[k]) - cls.members[i].approx()) > 1e-12) ++k;
        used[k] = true;
        if (on[k]) {
            support.push_back(i);
            x0[2 * k] = u(rng);
            x0[2 * k + 1] = -u(rng);
        }
    }
    const double want = 2 * kPi / invariants::chi(support, cls).approx();
    const auto res = flowsim::min_period(numkit::to_double(a), x0);
    if (res.kind != flowsim::PeriodKind::period) {
        why = "no period found";
        return INFINITY;
    }
    return std::fabs(res.period - want) / want;
}

// Value at s = 0 of the polynomial through (s_k, v_k) (Neville).
numkit::ComplexD extrapolate_to_zero(std::vector<double> s, std::vector<numkit::ComplexD> v) {
    for (std::size_t level = 1; level < s.size(); ++level)
        for (std::size_t i = 0; i + level < s.size(); ++i)
            v[i] = (v[i + 1] * numkit::ComplexD(s[i]) - v[i] * numkit::ComplexD(s[i + level])) *
                   numkit::ComplexD(1.0 / (s[i] - s[i + level]));
    return v[0];
}

std::vector<bool> corner_mask(const std::vector<BlockSpec>& blocks) {
    std::vector<bool> mask;
    for (const auto& b : blocks) {
        const auto d = static_cast<std::size_t>(b.factor.degree());
        const bool center = d == 1 ? b.factor.coeff(0).is_zero() : b.factor.coeff(1).is_zero() && b.factor.coeff(0) > 0;
        for (std::size_t k = 0; k < b.size * d; ++k) mask.push_back(center && k < d);
    }
    return mask;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) std::filesystem::current_path(argv[1]);

    criterion(1, "similarity invariance", 30, [] {
        Rng rng(1001);
        std::size_t good = 0;
        const std::size_t trials = 200;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const auto blocks = testing::random_blocks(rng, 8);
            const MatrixQ a = testing::realize(blocks);
            const MatrixQ b = testing::conjugate_by(a, testing::random_invertible(rng, a.size()));
            const auto sa = invariants::conjugacy_signature(desc_of(a));
            const auto sb = invariants::conjugacy_signature(desc_of(b));
            const auto so = invariants::conjugacy_signature(testing::expected_descriptor(blocks));
            if (same_signature(sa, sb) && same_signature(sa, so) && invariants::decide_conjugate(sa, sb).conjugate) ++good;
        }
        return Outcome{good == trials, count_text(good, trials) + " signatures equal, n <= 8"};
    });

    criterion(2, "conjugacy decision on constructed pairs", 10, [] {
        Rng rng(1002);
        std::size_t good = 0, equal = 0;
        const std::size_t trials = 100;
        auto decide = [](const MatrixQ& a, const MatrixQ& b) {
            return invariants::decide_conjugate(invariants::conjugacy_signature(desc_of(a)),
                                                invariants::conjugacy_signature(desc_of(b)))
                .conjugate;
        };
        // Rotation speeds 1 vs 2.
        const bool speeds_ok = !decide(rotations_q({Rational(1)}), rotations_q({Rational(2)}));
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const auto a_blocks = testing::random_blocks(rng, 6);
            auto b_blocks = a_blocks;
            const auto pick = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(b_blocks.size()) - 1));
            switch (trial % 4) {
                case 0:
                case 1:
                    for (auto& b : b_blocks) b = perturb_hyperbolic(rng, b);
                    break;
                case 2: {
                    const int kind = b_blocks[pick].factor.degree() == 1 ? 0 : static_cast<int>(uniform_int(rng, 1, 3));
                    b_blocks[pick].factor = testing::random_factor(rng, kind);
                    break;
                }
                default:
                    b_blocks[pick].size = b_blocks[pick].size > 1 && uniform_int(rng, 0, 1) ? b_blocks[pick].size - 1
                                                                                         : b_blocks[pick].size + 1;
                    break;
            }
            std::shuffle(b_blocks.begin(), b_blocks.end(), rng);
            const bool truth = truth_of(a_blocks) == truth_of(b_blocks);
            if (truth) ++equal;
            const MatrixQ a = testing::conjugate_by(testing::realize(a_blocks), testing::random_invertible(rng, testing::dimension_of(a_blocks)));
            const MatrixQ b = testing::conjugate_by(testing::realize(b_blocks), testing::random_invertible(rng, testing::dimension_of(b_blocks)));
            if (decide(a, b) == truth) ++good;
        }
        const bool mixed = equal >= 20 && trials - equal >= 20;
        return Outcome{good == trials && speeds_ok && mixed,
                       count_text(good, trials) + " correct (" + std::to_string(equal) + " conjugate, " +
                           std::to_string(trials - equal) + " not); speeds 1 vs 2 " +
                           (speeds_ok ? "not conjugate" : "WRONGLY conjugate")};
    });

    criterion(3, "chi-period law", 60, [] {
        Rng rng(1003);
        std::string why;
        const std::vector<bool> all(4, true);
        const double e23 = period_error(Rational(1), {2, 3}, all, rng, why);
        const double e24 = period_error(Rational(1), {2, 4}, all, rng, why);
        bool ok = e23 <= 1e-6 && e24 <= 1e-6;
        std::size_t good = 0;
        double worst = 0.0;
        const std::size_t trials = 50;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const auto p = random_p(rng, 4, 20, false);
            const Rational beta = numkit::make_rational(Integer(uniform_int(rng, 1, 4)), Integer(2));
            std::vector<bool> on(p.size());
            bool any = false;
            for (std::size_t i = 0; i < p.size(); ++i) any |= (on[i] = uniform_int(rng, 0, 2) != 0);
            if (!any) on[0] = true;
            const double err = period_error(beta, p, on, rng, why);
            worst = std::max(worst, err);
            if (err <= 1e-6) ++good;
        }
        ok = ok && good == trials;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s within 1e-6 (worst %.1e); (2,3) -> 2pi err %.1e, (2,4) -> pi err %.1e%s",
                      count_text(good, trials).c_str(), worst, e23, e24, why.empty() ? "" : ("; " + why).c_str());
        return Outcome{ok, buf};
    });

    criterion(4, "singular-value round trip", 5, [] {
        Rng rng(1004);
        std::size_t good = 0;
        const std::size_t trials = 500;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const auto p = random_p(rng, 6, 50, true);
            invariants::RationalClass cls;
            const long beta = uniform_int(rng, 1, 7);
            cls.beta = spectral::Frequency(Surd(Rational(beta)));
            cls.p = p;
            for (auto v : p) cls.members.push_back(spectral::Frequency(Surd(Rational(beta * v))));
            const std::size_t dimD = static_cast<std::size_t>(uniform_int(rng, 0, 3));
            const auto sv = invariants::singular_values(cls);
            auto oracle = [&](const spectral::Frequency& q) { return invariants::preimage_dim(cls, q, dimD); };
            if (invariants::recover_p(sv, oracle, dimD) == p) ++good;
        }
        return Outcome{good == trials, count_text(good, trials) + " exact matches, |p| <= 6, p_i <= 50"};
    });

    criterion(5, "Z-calculus", 1, [] {
        std::size_t bad_zero = 0, checks = 0;
        for (std::size_t k = 1; k <= 64; ++k)
            for (std::size_t m = 0; m <= 64; ++m) {
                ++checks;
                if ((invariants::z_reduce(k, m) == 0) != (k >= m)) ++bad_zero;
            }
        // Strings over {X, Y}; W_s is the block of size word_value(s), and alpha applies after the first operator.
        std::vector<std::string> words{""};
        for (std::size_t len = 1; len <= 6; ++len)
            for (std::size_t bits = 0; bits < (1u << len); ++bits) {
                std::string w;
                for (std::size_t i = 0; i < len; ++i) w += (bits >> (len - 1 - i)) & 1 ? 'Y' : 'X';
                words.push_back(w);
            }
        std::size_t bad_id = 0, ids = 0;
        for (const auto& alpha : words)
            for (const auto& beta : words) {
                const std::size_t b = invariants::word_value(beta);
                const std::size_t lhs[4] = {
                    invariants::apply_word(alpha + "X", invariants::word_value(beta + "X")),
                    invariants::apply_word(alpha + "X", invariants::word_value(beta + "Y")),
                    invariants::apply_word(alpha + "Y", invariants::word_value(beta + "X")),
                    invariants::apply_word(alpha + "Y", invariants::word_value(beta + "Y"))};
                const std::size_t rhs[4] = {invariants::apply_word(alpha, b), invariants::apply_word(alpha, b + 1),
                                            invariants::apply_word(alpha, b), invariants::apply_word(alpha, b)};
                for (int i = 0; i < 4; ++i) {
                    ++ids;
                    if (lhs[i] != rhs[i]) ++bad_id;
                }
                // The same identities on digit strings.
                if (invariants::word_value(invariants::reduce_word('X', beta + "Y")) != b + 1) ++bad_id;
                if (invariants::word_value(invariants::reduce_word('Y', beta + "Y")) != b) ++bad_id;
            }
        return Outcome{bad_zero == 0 && bad_id == 0,
                       count_text(checks - bad_zero, checks) + " zero-law cases, " + count_text(ids - bad_id, ids) +
                           " identity cases over strings of length <= 6"};
    });

    criterion(6, "F-sequence round trip", 1, [] {
        Rng rng(1006);
        std::size_t good = 0;
        const std::size_t trials = 200;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            // Center-only descriptors: zero blocks and rotation pairs.
            std::vector<spectral::JordanBlocks> center;
            const long distinct = uniform_int(rng, 1, 3);
            for (long e = 0; e < distinct; ++e) {
                const long w = e == 0 && uniform_int(rng, 0, 1) ? 0 : uniform_int(rng, 1, 6) + 6 * e;
                const long sizes = uniform_int(rng, 1, 3);
                for (long s = 0; s < sizes; ++s) {
                    const auto size = static_cast<std::size_t>(uniform_int(rng, 1, 6));
                    const auto count = static_cast<std::size_t>(uniform_int(rng, 1, 3));
                    center.push_back({spectral::ExactEigenvalue::gaussian(0, w), size, count});
                    if (w != 0) center.push_back({spectral::ExactEigenvalue::gaussian(0, -w), size, count});
                }
            }
            std::size_t n = 0;
            for (const auto& b : center) n += b.size * b.count;
            const auto canonical = spectral::split_dims(spectral::SpectrumDescriptor(n, center, true), 0.0).center_blocks;
            const auto levels = invariants::f_dimensions(canonical, 7);
            bool ok = true;
            for (std::size_t e = 0; e < levels[0].multiplicities.size(); ++e) {
                const auto& lambda = levels[0].multiplicities[e].first;
                std::vector<std::size_t> mults;
                for (const auto& l : levels) mults.push_back(l.multiplicities[e].second);
                std::vector<spectral::JordanCount> want;
                for (const auto& b : canonical)
                    if (b.lambda.same(lambda, 0.0)) want.push_back({b.size, b.count});
                std::sort(want.begin(), want.end(), [](auto& x, auto& y) { return x.size < y.size; });
                ok = ok && invariants::n_from_f(mults) == want;
            }
            const auto back = invariants::blocks_from_f(levels);
            ok = ok && back.size() == canonical.size();
            for (const auto& b : canonical)
                ok = ok && std::any_of(back.begin(), back.end(), [&](const spectral::JordanBlocks& x) {
                         return x.lambda.same(b.lambda, 0.0) && x.size == b.size && x.count == b.count;
                     });
            if (ok) ++good;
        }
        return Outcome{good == trials, count_text(good, trials) + " descriptors recovered"};
    });

    criterion(7, "witness convergence", 60, [] {
        Rng rng(1007);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        std::size_t good = 0, total = 0;
        double worst_res = 0, worst_exp = INFINITY, worst_raw = 0, worst_limit = 0;
        for (auto [r, beta] : std::vector<std::pair<std::size_t, double>>{{1, 1.0}, {1, 2.0}, {2, 1.0}}) {
            for (int h = 0; h < 5; ++h) {
                std::vector<double> head(r + 1);
                for (auto& v : head) v = u(rng);
                const auto w = flowsim::rw_witness(beta, r, head, 1000);
                ++total;
                const auto target = w.limit_y[r] * numkit::ComplexD(r % 2 == 0 ? 1.0 : -1.0);
                // x^n_{r+1} is a polynomial in 1/t_n; extrapolate the computed tail to 1/t = 0.
                std::vector<double> s;
                std::vector<numkit::ComplexD> v;
                for (std::size_t k = 0; k <= r + 2; ++k) {
                    const auto& e = w.entries[(1000 >> k) - 1];
                    s.push_back(1.0 / e.t);
                    v.push_back(e.x[r]);
                }
                const double limit_err = numkit::abs(extrapolate_to_zero(s, v) - target);
                const double raw = numkit::abs(w.entries.back().x[r] - target);
                worst_res = std::max(worst_res, w.max_scaled_residual);
                worst_exp = std::min(worst_exp, w.decay_exponent);
                worst_raw = std::max(worst_raw, raw);
                worst_limit = std::max(worst_limit, limit_err);
                if (w.max_scaled_residual <= 1e-12 && w.decay_exponent >= 0.9 && limit_err <= 1e-6) ++good;
            }
        }
        char buf[240];
        std::snprintf(buf, sizeof buf,
                      "%s sequences; max scaled residual %.1e, min decay exponent %.3f, limit of x^n_{r+1} within "
                      "%.1e of (-1)^r y_{r+1} (raw gap at n = 1000: %.1e)",
                      count_text(good, total).c_str(), worst_res, worst_exp, worst_limit, worst_raw);
        return Outcome{good == total, buf};
    });

    criterion(8, "factorial system structure", 1, [] {
        Rng rng(1008);
        std::size_t good = 0;
        double worst = 0;
        for (std::size_t r = 0; r <= 8; ++r) {
            std::vector<Rational> y(r + 1);
            for (auto& v : y) v = testing::random_rational(rng, 9, 5);
            const auto x = flowsim::propeq1_solve(r, y);
            const auto m = flowsim::FactorialSystem{r, r + 1}.matrix();
            const bool exact = m.apply(x) == y;
            const auto md = numkit::to_double(m);
            double res = 0;
            for (std::size_t i = 0; i <= r; ++i) {
                double acc = -numkit::to_double(y[i]), scale = std::fabs(numkit::to_double(y[i]));
                for (std::size_t j = 0; j <= r; ++j) {
                    const double term = md(i, j) * numkit::to_double(x[j]);
                    acc += term;
                    scale += std::fabs(term);
                }
                res = std::max(res, std::fabs(acc) / scale);
            }
            worst = std::max(worst, res);
            const auto c = flowsim::propeq1_coefficients(r);
            if (exact && res <= 1e-12 && c[r] == Rational(r % 2 == 0 ? 1 : -1)) ++good;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s sizes r = 0..8; worst componentwise residual %.1e; x0 coefficient on y_r = (-1)^r",
                      count_text(good, 9).c_str(), worst);
        return Outcome{good == 9, buf};
    });

    criterion(9, "boundedness oracle agreement", 30, [] {
        Rng rng(1009);
        std::size_t agree = 0, determined = 0, exact_ok = 0;
        const std::size_t trials = 200;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const auto blocks = testing::random_blocks(rng, 6);
            MatrixQ a = testing::realize(blocks);
            const auto mask = corner_mask(blocks);
            const bool want_bounded = trial % 2 == 0;
            std::vector<Rational> x0(a.size());
            for (std::size_t i = 0; i < x0.size(); ++i)
                if (mask[i] || !want_bounded) x0[i] = Rational(uniform_int(rng, -3, 3));
            bool truth = true;
            for (std::size_t i = 0; i < x0.size(); ++i)
                if (!mask[i] && !x0[i].is_zero()) truth = false;
            // Every other input is moved to a random basis.
            if (trial % 4 >= 2) {
                const MatrixQ s = testing::random_invertible(rng, a.size());
                a = testing::conjugate_by(a, s);
                x0 = s.apply(x0);
            }
            const auto exact = flowsim::bounded_exact(a, x0);
            if (exact == (truth ? flowsim::Boundedness::bounded : flowsim::Boundedness::unbounded)) ++exact_ok;
            const double max_re = testing::max_real_part(blocks);
            flowsim::ProbeOptions opts;
            if (max_re > 0) opts.horizon = std::min(flowsim::kDefaultHorizon, 25.0 / max_re);
            std::vector<double> xd;
            for (const auto& v : x0) xd.push_back(numkit::to_double(v));
            const auto probe = flowsim::bounded_probe(numkit::to_double(a), xd, opts);
            if (probe.verdict == flowsim::Boundedness::undetermined) continue;
            ++determined;
            if (probe.verdict == exact) ++agree;
            else {
                std::fprintf(stderr, "trial %zu exact %s probe %s max %g inner %g outer %g floor %g horizon %g\n", trial,
                             flowsim::to_string(exact), flowsim::to_string(probe.verdict), probe.max_norm, probe.inner_max,
                             probe.outer_max, probe.floor, opts.horizon);
                for (const auto& b : blocks) std::fprintf(stderr, "  %s ^%zu\n", numkit::to_string(b.factor).c_str(), b.size);
            }
        }
        return Outcome{agree == determined && exact_ok == trials && 2 * determined >= trials,
                       count_text(agree, determined) + " sampling verdicts agree (" +
                           std::to_string(trials - determined) + " undetermined); exact criterion matches the corner oracle " +
                           count_text(exact_ok, trials)};
    });

    criterion(10, "CLI golden files", 0, [] {
        std::ifstream cases("golden/cases.txt");
        if (!cases) return Outcome{false, "golden/cases.txt not found from " + std::filesystem::current_path().string()};
        std::size_t total = 0, matched = 0, round_trips = 0, round_ok = 0;
        std::vector<std::string> problems;
        for (std::string line; std::getline(cases, line);) {
            if (line.empty() || line[0] == '#') continue;
            const auto bar1 = line.find('|'), bar2 = line.find('|', bar1 + 1);
            const std::string name = trim(line.substr(0, bar1));
            const int code = std::stoi(trim(line.substr(bar1 + 1, bar2 - bar1 - 1)));
            auto args = split_ws(line.substr(bar2 + 1));
            ++total;
            const auto got = run_cli(args);
            if (got.code == code && got.out == slurp("golden/" + name + ".out") &&
                got.err == slurp("golden/" + name + ".err"))
                ++matched;
            else
                problems.push_back(name);
            if (code != 0) continue;
            // Every successful report survives a JSON round trip.
            if (std::find(args.begin(), args.end(), "--format") == args.end()) {
                args.push_back("--format");
                args.push_back("json");
            }
            const auto js = run_cli(args);
            ++round_trips;
            try {
                if (js.code == 0 && cli::emit_json(cli::parse_report(js.out)) == js.out) ++round_ok;
            } catch (const std::exception&) {
            }
        }
        // classify and equiv agree on every ordered pair of valid documents.
        const std::vector<std::string> docs{"diag_1_m1", "diag_2_m3", "rot1", "rot2", "rot_2_3", "freq_2_3",
                                            "jordan_i_float", "jordan0", "cubic", "surd_center", "nontransitive"};
        std::size_t pairs = 0, same = 0;
        for (const auto& a : docs)
            for (const auto& b : docs) {
                ++pairs;
                const auto c = run_cli({"classify", "data/" + a + ".json", "data/" + b + ".json", "--format", "json"});
                const auto e = run_cli({"equiv", "data/" + a + ".json", "data/" + b + ".json", "--format", "json"});
                if (c.code != 0 || e.code != 0) continue;
                const auto rc = cli::parse_report(c.out), re = cli::parse_report(e.out);
                if (rc.classify && re.classify && rc.classify == re.classify && c.err == e.err) ++same;
            }
        std::string detail = count_text(matched, total) + " golden cases (output and exit code), " +
                             count_text(round_ok, round_trips) + " JSON round trips, " + count_text(same, pairs) +
                             " classify/equiv pairs identical";
        for (const auto& p : problems) detail += "; mismatch " + p;
        return Outcome{matched == total && round_ok == round_trips && same == pairs, detail};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
