#pragma once

#include <compare>
#include <string>

#include "flowclass/numkit/scalar.hpp"

namespace flowclass::numkit {

/// Exact real number coeff * sqrt(radicand) with radicand a square-free
/// positive integer. Every square root of a nonnegative rational has exactly
/// one such representation (zero is 0 * sqrt(1)).
struct Surd {
    Rational coeff{0};
    Integer radicand{1};

    Surd() = default;
    explicit Surd(Rational c) : coeff(std::move(c)) {}
    Surd(Rational c, Integer r);

    /// sqrt(x) for x >= 0.
    static Surd sqrt_of(const Rational& x);

    [[nodiscard]] bool is_zero() const { return coeff.is_zero(); }
    [[nodiscard]] bool is_rational() const { return radicand == 1 || coeff.is_zero(); }
    [[nodiscard]] int sign() const { return coeff.sign(); }
    [[nodiscard]] double approx() const;
    /// The square, always rational.
    [[nodiscard]] Rational squared() const { return coeff * coeff * Rational(radicand); }
    [[nodiscard]] Surd abs() const { return Surd(coeff < 0 ? Rational(-coeff) : coeff, radicand); }
    [[nodiscard]] std::string str() const;

    friend Surd operator-(const Surd& s) { return Surd(-s.coeff, s.radicand); }
    friend bool operator==(const Surd& a, const Surd& b) {
        return a.coeff == b.coeff && (a.coeff.is_zero() || a.radicand == b.radicand);
    }
    friend std::strong_ordering operator<=>(const Surd& a, const Surd& b);
};

/// Sign of q + s for rational q and surd s, computed exactly.
int sign_of_sum(const Rational& q, const Surd& s);

/// Writes n = root_part^2 * result with result square-free (n > 0).
Integer squarefree_part(const Integer& n, Integer& root_part);

}  // namespace flowclass::numkit
