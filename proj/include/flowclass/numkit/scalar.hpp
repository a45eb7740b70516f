#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "flowclass/errors.hpp"

namespace flowclass::numkit {

// Expression templates are disabled so that generic code can treat these like
// ordinary value types (auto, ternaries, std::swap).
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Complex number stored as an explicit (real, imaginary) pair.
///
/// Used for both scalar modes: Complex<Rational> keeps exact arithmetic closed
/// over Q(i), Complex<double> is the floating counterpart.
template <typename T>
struct Complex {
    T re{};
    T im{};

    Complex() = default;
    Complex(T real) : re(std::move(real)), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(T real, T imag) : re(std::move(real)), im(std::move(imag)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        T r = re * o.re - im * o.im;
        T i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        T den = o.re * o.re + o.im * o.im;
        T r = (re * o.re + im * o.im) / den;
        T i = (im * o.re - re * o.im) / den;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <typename T>
Complex<T> conj(const Complex<T>& z) {
    return Complex<T>(z.re, -z.im);
}

inline double abs(const Complex<double>& z) { return std::hypot(z.re, z.im); }

using ComplexQ = Complex<Rational>;
using ComplexD = Complex<double>;

/// Compile-time description of the four supported entry types.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr bool complex = false;
    using Real = Rational;
    using Promoted = ComplexQ;
};
template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr bool complex = false;
    using Real = double;
    using Promoted = ComplexD;
};
template <>
struct ScalarTraits<ComplexQ> {
    static constexpr bool exact = true;
    static constexpr bool complex = true;
    using Real = Rational;
    using Promoted = ComplexQ;
};
template <>
struct ScalarTraits<ComplexD> {
    static constexpr bool exact = false;
    static constexpr bool complex = true;
    using Real = double;
    using Promoted = ComplexD;
};

template <typename T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const ComplexQ& z) { return z.re.is_zero() && z.im.is_zero(); }
inline bool is_zero(const ComplexD& z) { return z.re == 0.0 && z.im == 0.0; }

/// Magnitude as a double; used for pivoting and tolerances.
inline double magnitude(const Rational& x) { return std::fabs(x.convert_to<double>()); }
inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const ComplexQ& z) {
    return std::hypot(z.re.convert_to<double>(), z.im.convert_to<double>());
}
inline double magnitude(const ComplexD& z) { return abs(z); }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline ComplexD to_complex_double(const Rational& x) { return {x.convert_to<double>(), 0.0}; }
inline ComplexD to_complex_double(double x) { return {x, 0.0}; }
inline ComplexD to_complex_double(const ComplexQ& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}
inline ComplexD to_complex_double(const ComplexD& z) { return z; }

Rational make_rational(const Integer& num, const Integer& den);

/// gcd of two positive rationals: gcd(numerators) / lcm(denominators).
Rational rational_gcd(const Rational& a, const Rational& b);

std::string to_string(const Rational& x);
std::string to_string(const ComplexQ& z);
std::string to_string(double x);
std::string to_string(const ComplexD& z);

enum class ScalarMode { exact, floating };

/// A parsed scalar literal. Integers and "a/b" literals are exact; decimal and
/// scientific literals are floating.
struct Scalar {
    std::variant<Rational, double> value;

    [[nodiscard]] ScalarMode mode() const {
        return value.index() == 0 ? ScalarMode::exact : ScalarMode::floating;
    }
    [[nodiscard]] double approx() const;
    [[nodiscard]] bool is_integer_literal() const { return integer_literal; }

    bool integer_literal = false;
};

/// Parses "p", "p/q", decimal or scientific notation. Throws ParseError.
Scalar parse_scalar(std::string_view token);
Rational parse_rational(std::string_view token);

}  // namespace flowclass::numkit
