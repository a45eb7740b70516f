#include "flowclass/numkit/surd.hpp"

#include <cmath>

namespace flowclass::numkit {

Surd::Surd(Rational c, Integer r) : coeff(std::move(c)), radicand(std::move(r)) {
    if (radicand <= 0) throw UsageError("surd radicand must be positive");
    if (coeff.is_zero()) radicand = 1;
}

Integer squarefree_part(const Integer& n, Integer& root_part) {
    if (n <= 0) throw UsageError("squarefree_part requires a positive integer");
    Integer rest = n;
    Integer result(1);
    root_part = 1;
    for (Integer p(2); p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (p > 1000000) break;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) root_part *= p;
        if (e % 2 == 1) result *= p;
    }
    // After removing primes below 10^6, a cofactor below 10^18 is 1, a prime,
    // a product of two distinct primes, or a prime square.
    if (rest > 1) {
        Integer s = sqrt(rest);
        if (s * s == rest)
            root_part *= s;
        else
            result *= rest;
    }
    return result;
}

Surd Surd::sqrt_of(const Rational& x) {
    if (x < 0) throw UsageError("square root of a negative rational");
    if (x.is_zero()) return Surd();
    const Integer num = numerator(x);
    const Integer den = denominator(x);
    // sqrt(num/den) = sqrt(num*den) / den
    Integer root;
    Integer free = squarefree_part(num * den, root);
    return Surd(make_rational(root, den), free);
}

double Surd::approx() const {
    return coeff.convert_to<double>() * std::sqrt(radicand.convert_to<double>());
}

std::string Surd::str() const {
    if (radicand == 1 || coeff.is_zero()) return coeff.str();
    const std::string root = "sqrt(" + radicand.str() + ")";
    if (coeff == 1) return root;
    if (coeff == -1) return "-" + root;
    if (denominator(coeff) == 1) return coeff.str() + "*" + root;
    return "(" + coeff.str() + ")*" + root;
}

std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    const Rational qa = a.squared();
    const Rational qb = b.squared();
    if (qa == qb) return std::strong_ordering::equal;
    const bool amag_less = qa < qb;
    if (sa > 0) return amag_less ? std::strong_ordering::less : std::strong_ordering::greater;
    return amag_less ? std::strong_ordering::greater : std::strong_ordering::less;
}

int sign_of_sum(const Rational& q, const Surd& s) {
    const int sq = q.sign();
    const int ss = s.sign();
    if (ss == 0) return sq;
    if (sq == 0 || sq == ss) return ss;
    // Opposite signs: the larger magnitude wins; equality impossible unless s is rational.
    const Rational q2 = q * q;
    const Rational s2 = s.squared();
    if (q2 == s2) return 0;
    return q2 > s2 ? sq : ss;
}

}  // namespace flowclass::numkit
