#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "flowclass/errors.hpp"
#include "flowclass/numkit/scalar.hpp"

namespace flowclass::numkit {

/// Dense square matrix, row-major.
template <typename T>
class Matrix {
   public:
    using value_type = T;

    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, T(0)) {
        if (n == 0) throw UsageError("matrix dimension must be at least 1");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) : Matrix(rows.size()) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != n_) throw UsageError("matrix must be square");
            std::size_t j = 0;
            for (const auto& v : row) (*this)(i, j++) = v;
            ++i;
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    [[nodiscard]] std::size_t size() const { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    [[nodiscard]] std::span<const T> data() const { return data_; }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        const std::size_t n = a.n_;
        Matrix c(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const T& aik = a(i, k);
                if (is_zero(aik)) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

    /// A - s*I
    [[nodiscard]] Matrix shifted(const T& s) const {
        Matrix m = *this;
        for (std::size_t i = 0; i < n_; ++i) m(i, i) -= s;
        return m;
    }

    [[nodiscard]] T trace() const {
        T t(0);
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    [[nodiscard]] std::vector<T> apply(std::span<const T> x) const {
        if (x.size() != n_) throw UsageError("vector dimension does not match matrix");
        std::vector<T> y(n_, T(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    [[nodiscard]] double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, magnitude(v));
        return m;
    }

    /// Infinity norm (max row sum).
    [[nodiscard]] double norm_inf() const {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += magnitude((*this)(i, j));
            m = std::max(m, s);
        }
        return m;
    }

    /// One norm (max column sum).
    [[nodiscard]] double norm_one() const {
        double m = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) s += magnitude((*this)(i, j));
            m = std::max(m, s);
        }
        return m;
    }

    template <typename F>
    [[nodiscard]] auto map(F&& f) const {
        using U = decltype(f(std::declval<const T&>()));
        Matrix<U> m(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

   private:
    void check_same(const Matrix& o) const {
        if (o.n_ != n_) throw UsageError("matrix dimensions differ");
    }

    std::size_t n_ = 0;
    std::vector<T> data_;
};

using MatrixQ = Matrix<Rational>;
using MatrixD = Matrix<double>;
using MatrixCQ = Matrix<ComplexQ>;
using MatrixCD = Matrix<ComplexD>;

template <typename T>
Matrix<typename ScalarTraits<T>::Promoted> to_complex(const Matrix<T>& m) {
    using C = typename ScalarTraits<T>::Promoted;
    return m.map([](const T& v) { return C(v); });
}

inline MatrixD to_double(const MatrixQ& m) {
    return m.map([](const Rational& v) { return v.convert_to<double>(); });
}
inline MatrixCD to_double(const MatrixCQ& m) {
    return m.map([](const ComplexQ& v) { return to_complex_double(v); });
}

/// Block-diagonal assembly.
template <typename T>
Matrix<T> block_diag(std::span<const Matrix<T>> blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    Matrix<T> m(n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) m(off + i, off + j) = b(i, j);
        off += b.size();
    }
    return m;
}

}  // namespace flowclass::numkit
