#pragma once

#include <string>
#include <variant>

#include "flowclass/numkit/poly.hpp"
#include "flowclass/numkit/scalar.hpp"
#include "flowclass/numkit/surd.hpp"

namespace flowclass::spectral {

using numkit::ComplexD;
using numkit::PolyQ;
using numkit::Rational;
using numkit::Surd;

/// Algebraic number of degree at most two over Q, as it arises from a
/// linear or irreducible quadratic factor of a rational characteristic
/// polynomial: value = re + part (real case) or re + i*part (imaginary case).
struct ExactEigenvalue {
    Rational re{0};
    Surd part{};
    bool imaginary = false;

    static ExactEigenvalue rational(Rational q) { return {std::move(q), Surd(), false}; }
    static ExactEigenvalue gaussian(Rational re, Rational im) {
        return {std::move(re), Surd(std::move(im)), true};
    }

    [[nodiscard]] bool is_rational() const { return part.is_zero(); }
    [[nodiscard]] bool is_real() const { return part.is_zero() || !imaginary; }
    /// Roots whose imaginary part is a rational number (elements of Q(i)).
    [[nodiscard]] bool is_gaussian() const { return part.is_zero() || (imaginary && part.is_rational()); }
    [[nodiscard]] numkit::ComplexQ as_gaussian() const;

    [[nodiscard]] int real_sign() const;
    [[nodiscard]] Surd imag() const { return imaginary ? part : Surd(); }
    [[nodiscard]] ExactEigenvalue conj() const;
    [[nodiscard]] PolyQ minimal_polynomial() const;
    [[nodiscard]] ComplexD approx() const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const ExactEigenvalue& a, const ExactEigenvalue& b) {
        if (a.part.is_zero() && b.part.is_zero()) return a.re == b.re;
        return a.re == b.re && a.part == b.part && a.imaginary == b.imaginary;
    }
};

/// A real frequency (imaginary part of a center eigenvalue): exact surd or double.
class Frequency {
   public:
    Frequency() = default;
    explicit Frequency(Surd s) : value_(std::move(s)) {}
    explicit Frequency(double v) : value_(v) {}

    [[nodiscard]] bool is_exact() const { return value_.index() == 0; }
    [[nodiscard]] const Surd& exact() const { return std::get<Surd>(value_); }
    [[nodiscard]] double approx() const;
    [[nodiscard]] Frequency abs() const;
    [[nodiscard]] std::string str() const;

    /// Numeric comparison; exact when both are exact, else |a - b| <= tol * (1 + |a|).
    [[nodiscard]] int compare(const Frequency& other, double tol) const;

   private:
    std::variant<Surd, double> value_{Surd()};
};

/// An eigenvalue in either scalar mode.
class Eigenvalue {
   public:
    Eigenvalue() = default;
    Eigenvalue(ExactEigenvalue e) : value_(std::move(e)) {}  // NOLINT(google-explicit-constructor)
    Eigenvalue(ComplexD z) : value_(z) {}                    // NOLINT(google-explicit-constructor)

    [[nodiscard]] bool is_exact() const { return value_.index() == 0; }
    [[nodiscard]] const ExactEigenvalue& exact() const { return std::get<ExactEigenvalue>(value_); }
    [[nodiscard]] ComplexD approx() const;

    /// Sign of the real part; floating values within tol of zero count as zero.
    [[nodiscard]] int real_sign(double tol) const;
    [[nodiscard]] bool is_center(double tol) const { return real_sign(tol) == 0; }
    /// Imaginary part, signed.
    [[nodiscard]] Frequency imag() const;
    /// Sign of the imaginary part, with the same tolerance semantics as real_sign.
    [[nodiscard]] int imag_sign(double tol) const;
    [[nodiscard]] Eigenvalue conj() const;
    [[nodiscard]] std::string str() const;

    /// Equality: exact when both exact, else componentwise within tol * (1 + |z|).
    [[nodiscard]] bool same(const Eigenvalue& other, double tol) const;

    /// Canonical order: real part, then |imaginary part|, positive imaginary first.
    [[nodiscard]] int compare(const Eigenvalue& other, double tol) const;

   private:
    std::variant<ExactEigenvalue, ComplexD> value_{ExactEigenvalue{}};
};

/// Roots of a linear or irreducible quadratic factor, as exact eigenvalues.
std::vector<ExactEigenvalue> roots_of_factor(const PolyQ& factor);

}  // namespace flowclass::spectral
