#include "flowclass/spectral/eigenvalue.hpp"

#include <cmath>

namespace flowclass::spectral {

namespace {

// "", "(1/2)", "3" style coefficient followed by an optional sqrt(d).
std::string magnitude_text(const Surd& s) {
    const Rational c = s.coeff < 0 ? Rational(-s.coeff) : s.coeff;
    std::string out;
    const bool has_root = s.radicand != 1;
    if (c != 1 || !has_root) out = denominator(c) == 1 ? c.str() : "(" + c.str() + ")";
    if (has_root) out += (out.empty() ? "" : "*") + std::string("sqrt(") + s.radicand.str() + ")";
    return out;
}

int sign_within(double v, double tol) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

}  // namespace

numkit::ComplexQ ExactEigenvalue::as_gaussian() const {
    if (!is_gaussian()) throw UsageError("eigenvalue " + str() + " is not a Gaussian rational");
    if (part.is_zero()) return {re, Rational(0)};
    return {re, part.coeff};
}

int ExactEigenvalue::real_sign() const {
    if (imaginary || part.is_zero()) return re.sign();
    return numkit::sign_of_sum(re, part);
}

ExactEigenvalue ExactEigenvalue::conj() const {
    if (!imaginary) return *this;
    return {re, -part, true};
}

PolyQ ExactEigenvalue::minimal_polynomial() const {
    if (part.is_zero()) return PolyQ({Rational(-re), Rational(1)});
    const Rational p2 = part.squared();
    const Rational c = imaginary ? Rational(re * re + p2) : Rational(re * re - p2);
    return PolyQ({c, Rational(-2 * re), Rational(1)});
}

ComplexD ExactEigenvalue::approx() const {
    const double r = re.convert_to<double>();
    if (part.is_zero()) return {r, 0.0};
    if (imaginary) return {r, part.approx()};
    return {r + part.approx(), 0.0};
}

std::string ExactEigenvalue::str() const {
    if (part.is_zero()) return re.str();
    const std::string mag = magnitude_text(part);
    const bool neg = part.sign() < 0;
    if (imaginary) {
        const std::string im = (mag == "1" ? "" : mag) + "i";
        if (re.is_zero()) return (neg ? "-" : "") + im;
        return re.str() + (neg ? "-" : "+") + im;
    }
    if (re.is_zero()) return (neg ? "-" : "") + mag;
    return re.str() + (neg ? "-" : "+") + mag;
}

double Frequency::approx() const {
    if (is_exact()) return exact().approx();
    return std::get<double>(value_);
}

Frequency Frequency::abs() const {
    if (is_exact()) return Frequency(exact().abs());
    return Frequency(std::fabs(std::get<double>(value_)));
}

std::string Frequency::str() const {
    if (is_exact()) return exact().str();
    return numkit::to_string(std::get<double>(value_));
}

int Frequency::compare(const Frequency& other, double tol) const {
    if (is_exact() && other.is_exact()) {
        const auto c = exact() <=> other.exact();
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    const double a = approx();
    const double b = other.approx();
    if (std::fabs(a - b) <= tol * (1.0 + std::fabs(a))) return 0;
    return a < b ? -1 : 1;
}

ComplexD Eigenvalue::approx() const {
    if (is_exact()) return exact().approx();
    return std::get<ComplexD>(value_);
}

int Eigenvalue::real_sign(double tol) const {
    if (is_exact()) return exact().real_sign();
    return sign_within(std::get<ComplexD>(value_).re, tol);
}

int Eigenvalue::imag_sign(double tol) const {
    if (is_exact()) return exact().imag().sign();
    return sign_within(std::get<ComplexD>(value_).im, tol);
}

Frequency Eigenvalue::imag() const {
    if (is_exact()) return Frequency(exact().imag());
    return Frequency(std::get<ComplexD>(value_).im);
}

Eigenvalue Eigenvalue::conj() const {
    if (is_exact()) return exact().conj();
    return numkit::conj(std::get<ComplexD>(value_));
}

std::string Eigenvalue::str() const {
    if (is_exact()) return exact().str();
    const ComplexD z = std::get<ComplexD>(value_);
    if (z.im == 0.0) return numkit::to_string(z.re);
    const std::string im = (std::fabs(z.im) == 1.0 ? "" : numkit::to_string(std::fabs(z.im))) + "i";
    if (z.re == 0.0) return (z.im < 0 ? "-" : "") + im;
    return numkit::to_string(z.re) + (z.im < 0 ? "-" : "+") + im;
}

bool Eigenvalue::same(const Eigenvalue& other, double tol) const {
    if (is_exact() && other.is_exact()) return exact() == other.exact();
    const ComplexD a = approx();
    const ComplexD b = other.approx();
    const double scale = tol * (1.0 + numkit::abs(a));
    return std::fabs(a.re - b.re) <= scale && std::fabs(a.im - b.im) <= scale;
}

int Eigenvalue::compare(const Eigenvalue& other, double tol) const {
    if (same(other, tol)) return 0;
    if (is_exact() && other.is_exact()) {
        const ExactEigenvalue& a = exact();
        const ExactEigenvalue& b = other.exact();
        // Rational real parts compare exactly; that covers every center eigenvalue.
        const bool a_rational_re = a.imaginary || a.part.is_zero();
        const bool b_rational_re = b.imaginary || b.part.is_zero();
        if (a_rational_re && b_rational_re) {
            if (a.re != b.re) return a.re < b.re ? -1 : 1;
            const auto mag = a.imag().abs() <=> b.imag().abs();
            if (mag != 0) return mag < 0 ? -1 : 1;
            return a.imag().sign() > b.imag().sign() ? -1 : 1;
        }
    }
    const ComplexD a = approx();
    const ComplexD b = other.approx();
    const double scale = tol * (1.0 + numkit::abs(a));
    if (std::fabs(a.re - b.re) > scale) return a.re < b.re ? -1 : 1;
    if (std::fabs(std::fabs(a.im) - std::fabs(b.im)) > scale) return std::fabs(a.im) < std::fabs(b.im) ? -1 : 1;
    if ((a.im >= 0) != (b.im >= 0)) return a.im >= 0 ? -1 : 1;
    const std::string sa = str();
    const std::string sb = other.str();
    return sa < sb ? -1 : (sa > sb ? 1 : 0);
}

std::vector<ExactEigenvalue> roots_of_factor(const PolyQ& factor) {
    const PolyQ f = factor.monic();
    if (f.degree() == 1) return {ExactEigenvalue::rational(-f.coeff(0))};
    if (f.degree() != 2) throw UsageError("roots_of_factor expects a factor of degree 1 or 2");
    const Rational b = f.coeff(1);
    const Rational c = f.coeff(0);
    const Rational re = -b / 2;
    const Rational disc = b * b / 4 - c;
    if (disc.is_zero()) return {ExactEigenvalue::rational(re), ExactEigenvalue::rational(re)};
    const bool imaginary = disc < 0;
    const Surd part = Surd::sqrt_of(imaginary ? Rational(-disc) : disc);
    if (!imaginary && part.is_rational())
        return {ExactEigenvalue::rational(re + part.coeff), ExactEigenvalue::rational(re - part.coeff)};
    return {ExactEigenvalue{re, part, imaginary}, ExactEigenvalue{re, -part, imaginary}};
}

}  // namespace flowclass::spectral
