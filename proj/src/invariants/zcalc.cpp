#include "flowclass/invariants/zcalc.hpp"

#include <algorithm>

namespace flowclass::invariants {

std::size_t z_reduce(std::size_t k, std::size_t m) {
    if (k == 0) throw UsageError("z_reduce needs k >= 1");
    if (k == 1) return y_reduce(m);
    return z_reduce(k / 2, k % 2 == 0 ? x_reduce(m) : y_reduce(m));
}

std::string z_word(std::size_t k) {
    if (k == 0) throw UsageError("z_word needs k >= 1");
    std::string w;
    for (; k > 0; k /= 2) w.push_back(k % 2 ? 'Y' : 'X');
    std::reverse(w.begin(), w.end());
    return w;
}

std::size_t apply_word(std::string_view word, std::size_t m) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == 'X')
            m = x_reduce(m);
        else if (*it == 'Y')
            m = y_reduce(m);
        else
            throw UsageError(std::string("word letter must be X or Y, got '") + *it + "'");
    }
    return m;
}

std::size_t word_value(std::string_view word) {
    std::size_t v = 0;
    for (char c : word) {
        if (c != 'X' && c != 'Y') throw UsageError(std::string("word letter must be X or Y, got '") + c + "'");
        v = 2 * v + (c == 'Y' ? 1 : 0);
    }
    return v;
}

std::string size_word(std::size_t m) { return m == 0 ? std::string() : z_word(m); }

namespace {

// Binary increment on an X/Y word.
std::string increment(std::string w) {
    std::size_t i = w.size();
    while (i > 0 && w[i - 1] == 'Y') w[--i] = 'X';
    if (i == 0)
        w.insert(w.begin(), 'Y');
    else
        w[i - 1] = 'Y';
    return w;
}

}  // namespace

std::string reduce_word(char op, std::string_view b) {
    if (op != 'X' && op != 'Y') throw UsageError(std::string("operator must be X or Y, got '") + op + "'");
    if (b.empty()) return {};
    std::string head(b.substr(0, b.size() - 1));
    if (op == 'Y' || b.back() == 'X') return head;
    return increment(head);
}

std::vector<FLevel> f_dimensions(const std::vector<spectral::JordanBlocks>& center_blocks, std::size_t kmax,
                                 double tol) {
    std::vector<spectral::Eigenvalue> lambdas;
    for (const auto& b : center_blocks)
        if (std::none_of(lambdas.begin(), lambdas.end(), [&](const auto& l) { return l.same(b.lambda, tol); }))
            lambdas.push_back(b.lambda);

    std::vector<FLevel> out;
    for (std::size_t k = 0; k <= kmax; ++k) {
        FLevel level{k, 0, {}};
        for (const auto& l : lambdas) {
            std::size_t mult = 0;
            for (const auto& b : center_blocks)
                if (b.size > k && b.lambda.same(l, tol)) mult += b.count;
            level.multiplicities.emplace_back(l, mult);
            level.dim += mult;
        }
        out.push_back(std::move(level));
    }
    return out;
}

std::vector<spectral::JordanCount> n_from_f(const std::vector<std::size_t>& mults) {
    if (mults.empty() || mults.back() != 0)
        throw InconsistentInvariants("multiplicity sequence must end in 0; extend kmax");
    std::vector<spectral::JordanCount> out;
    for (std::size_t m = 1; m < mults.size(); ++m) {
        if (mults[m] > mults[m - 1])
            throw InconsistentInvariants("multiplicity sequence increases at k = " + std::to_string(m));
        if (mults[m - 1] > mults[m]) out.push_back({m, mults[m - 1] - mults[m]});
    }
    return out;
}

std::vector<spectral::JordanBlocks> blocks_from_f(const std::vector<FLevel>& levels, double tol) {
    std::vector<spectral::JordanBlocks> out;
    if (levels.empty()) return out;
    for (std::size_t j = 0; j < levels.front().multiplicities.size(); ++j) {
        const spectral::Eigenvalue& l = levels.front().multiplicities[j].first;
        std::vector<std::size_t> mults;
        for (const auto& level : levels) {
            const auto it = std::find_if(level.multiplicities.begin(), level.multiplicities.end(),
                                         [&](const auto& e) { return e.first.same(l, tol); });
            mults.push_back(it == level.multiplicities.end() ? 0 : it->second);
        }
        for (const auto& c : n_from_f(mults)) out.push_back({l, c.size, c.count});
    }
    return out;
}

}  // namespace flowclass::invariants
