#include "flowclass/numkit/poly.hpp"

#include <sstream>

namespace flowclass::numkit {

PolyQ gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        auto [q, r] = div_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<PolyQ> squarefree_decomposition(const PolyQ& p) {
    std::vector<PolyQ> out;
    if (p.degree() <= 0) return out;
    const PolyQ f = p.monic();
    const PolyQ df = f.derivative();
    const PolyQ a0 = gcd(f, df);
    PolyQ b = div_rem(f, a0).first;
    PolyQ c = div_rem(df, a0).first;
    PolyQ d = c - b.derivative();
    while (b.degree() > 0) {
        PolyQ a = gcd(b, d);
        out.push_back(a);
        b = div_rem(b, a).first;
        c = div_rem(d, a).first;
        d = c - b.derivative();
    }
    return out;
}

std::vector<Integer> primitive_integer_coeffs(const PolyQ& p) {
    Integer den(1);
    for (const auto& c : p.coeffs()) den = lcm(den, denominator(c));
    std::vector<Integer> out;
    out.reserve(p.coeffs().size());
    Integer g(0);
    for (const auto& c : p.coeffs()) {
        Integer v = numerator(c) * (den / denominator(c));
        g = gcd(g, abs(v));
        out.push_back(std::move(v));
    }
    if (g.is_zero()) return out;
    const bool negate = !out.empty() && out.back() < 0;
    for (auto& v : out) {
        v /= g;
        if (negate) v = -v;
    }
    return out;
}

PolyD to_double(const PolyQ& p) {
    std::vector<double> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(v.convert_to<double>());
    return PolyD(std::move(c));
}

std::string to_string(const PolyQ& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const bool unit = mag == 1;
        if (!unit || k == 0) os << mag.str();
        if (k >= 1) {
            if (!unit) os << "*";
            os << var;
            if (k >= 2) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace flowclass::numkit
