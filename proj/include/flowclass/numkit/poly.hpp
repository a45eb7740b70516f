#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "flowclass/numkit/scalar.hpp"

namespace flowclass::numkit {

/// Univariate polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
template <typename T>
class Poly {
   public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(std::size_t degree, T coeff = T(1)) {
        std::vector<T> c(degree + 1, T(0));
        c[degree] = std::move(coeff);
        return Poly(std::move(c));
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<T>& coeffs() const { return c_; }
    [[nodiscard]] const T& lead() const { return c_.back(); }
    [[nodiscard]] T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

    template <typename U>
    [[nodiscard]] U eval(const U& x) const {
        U acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }

    [[nodiscard]] Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
        return Poly(std::move(d));
    }

    [[nodiscard]] Poly monic() const {
        if (is_zero()) return {};
        Poly p = *this;
        const T l = lead();
        for (auto& v : p.c_) v /= l;
        return p;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division over a field: a = q*b + r, deg r < deg b.
    friend std::pair<Poly, Poly> div_rem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw UsageError("polynomial division by zero");
        std::vector<T> r = a.c_;
        const int db = b.degree();
        if (a.degree() < db) return {Poly{}, a};
        std::vector<T> q(static_cast<std::size_t>(a.degree() - db + 1), T(0));
        for (int k = a.degree(); k >= db; --k) {
            const T f = r[k] / b.lead();
            q[k - db] = f;
            if (numkit::is_zero(f)) continue;
            for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
        }
        r.resize(static_cast<std::size_t>(db));
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

   private:
    void trim() {
        while (!c_.empty() && numkit::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using PolyQ = Poly<Rational>;
using PolyD = Poly<double>;

/// Monic gcd over Q.
PolyQ gcd(PolyQ a, PolyQ b);

/// Yun's square-free decomposition of a monic polynomial: returns s_1, s_2, ...
/// with p = prod s_i^i, each s_i square-free and pairwise coprime (s_i may be 1).
std::vector<PolyQ> squarefree_decomposition(const PolyQ& p);

/// Scales to a primitive integer polynomial with positive leading coefficient.
std::vector<Integer> primitive_integer_coeffs(const PolyQ& p);

PolyD to_double(const PolyQ& p);

std::string to_string(const PolyQ& p, const std::string& var = "t");

}  // namespace flowclass::numkit
