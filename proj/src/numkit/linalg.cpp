#include "flowclass/numkit/linalg.hpp"

#include <cmath>
#include <limits>

namespace flowclass::numkit {

namespace {

// Fraction-free elimination on an integer matrix; returns the rank.
std::size_t bareiss_rank(std::vector<Integer> m, std::size_t rows, std::size_t cols) {
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * cols + j]; };
    Integer prev(1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && at(p, col).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                at(i, j) = (at(r, col) * at(i, j) - at(i, col) * at(r, j)) / prev;
            at(i, col) = 0;
        }
        prev = at(r, col);
        ++r;
    }
    return r;
}

template <typename T>
std::size_t float_rank(Matrix<T> a, double tol) {
    if (tol < 0) throw UsageError("rank tolerance must be nonnegative");
    const std::size_t n = a.size();
    const double threshold = tol * a.max_abs();
    std::vector<std::size_t> colperm(n);
    for (std::size_t j = 0; j < n; ++j) colperm[j] = j;
    std::size_t r = 0;
    for (; r < n; ++r) {
        double best = -1.0;
        std::size_t bi = r, bj = r;
        for (std::size_t i = r; i < n; ++i)
            for (std::size_t j = r; j < n; ++j) {
                const double v = magnitude(a(i, colperm[j]));
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best <= threshold || best == 0.0) break;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(bi, j));
        std::swap(colperm[r], colperm[bj]);
        const T piv = a(r, colperm[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            const T f = a(i, colperm[r]) / piv;
            for (std::size_t j = r; j < n; ++j) a(i, colperm[j]) -= f * a(r, colperm[j]);
        }
    }
    return r;
}

template <typename T>
Matrix<T> exp_series(const Matrix<T>& a, double t) {
    if (!std::isfinite(t)) throw UsageError("mat_exp: time must be finite");
    const std::size_t n = a.size();
    Matrix<T> b = a * T(t);
    const double norm = b.norm_one();
    int s = 0;
    if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    b *= T(std::ldexp(1.0, -s));
    Matrix<T> result = Matrix<T>::identity(n);
    Matrix<T> term = Matrix<T>::identity(n);
    for (int k = 1; k <= 20; ++k) {
        term = term * b;
        term *= T(1.0 / k);
        result += term;
    }
    for (int k = 0; k < s; ++k) result = result * result;
    return result;
}

template <typename T>
std::vector<std::size_t> ranks_of_powers(const Matrix<T>& b, std::size_t kmax, double tol) {
    std::vector<std::size_t> out;
    out.reserve(kmax + 1);
    out.push_back(b.size());
    Matrix<T> p = Matrix<T>::identity(b.size());
    for (std::size_t k = 1; k <= kmax; ++k) {
        p = p * b;
        out.push_back(rank(p, tol));
    }
    return out;
}

}  // namespace

std::size_t rank(const MatrixQ& m, double tol) {
    if (tol != 0.0) throw UsageError("exact rank requires tol = 0");
    const std::size_t n = m.size();
    std::vector<Integer> ints(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        Integer den(1);
        for (std::size_t j = 0; j < n; ++j) den = lcm(den, denominator(m(i, j)));
        for (std::size_t j = 0; j < n; ++j)
            ints[i * n + j] = numerator(m(i, j)) * (den / denominator(m(i, j)));
    }
    return bareiss_rank(std::move(ints), n, n);
}

std::size_t rank(const MatrixCQ& m, double tol) {
    if (tol != 0.0) throw UsageError("exact rank requires tol = 0");
    MatrixCQ a = m;
    const std::size_t n = a.size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < n; ++col) {
        std::size_t p = r;
        while (p < n && is_zero(a(p, col))) ++p;
        if (p == n) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(r, j));
        const ComplexQ piv = a(r, col);
        for (std::size_t i = r + 1; i < n; ++i) {
            if (is_zero(a(i, col))) continue;
            const ComplexQ f = a(i, col) / piv;
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

std::size_t rank(const MatrixD& m, double tol) { return float_rank(m, tol); }
std::size_t rank(const MatrixCD& m, double tol) { return float_rank(m, tol); }

PolyQ char_poly(const MatrixQ& a) {
    const std::size_t n = a.size();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    MatrixQ m(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
    }
    return PolyQ(std::move(c));
}

PolyD char_poly(const MatrixD& a) {
    const std::size_t n = a.size();
    std::vector<double> c(n + 1);
    c[n] = 1.0;
    MatrixD m(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        c[n - k] = -(a * m).trace() / static_cast<double>(k);
    }
    return PolyD(std::move(c));
}

MatrixQ inverse(const MatrixQ& m) {
    const std::size_t n = m.size();
    MatrixQ a = m;
    MatrixQ inv = MatrixQ::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a(p, col).is_zero()) ++p;
        if (p == n) throw UsageError("matrix is singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(p, j), a(col, j));
            std::swap(inv(p, j), inv(col, j));
        }
        const Rational piv = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= piv;
            inv(col, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

MatrixQ evaluate(const PolyQ& p, const MatrixQ& m) {
    const std::size_t n = m.size();
    MatrixQ acc(n);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

MatrixD mat_exp(const MatrixD& a, double t) { return exp_series(a, t); }
MatrixCD mat_exp(const MatrixCD& a, double t) { return exp_series(a, t); }

std::optional<MatrixQ> mat_exp_nilpotent(const MatrixQ& nmat, const Rational& t) {
    const std::size_t n = nmat.size();
    MatrixQ result = MatrixQ::identity(n);
    MatrixQ term = MatrixQ::identity(n);
    const MatrixQ b = nmat * t;
    for (std::size_t k = 1; k <= n; ++k) {
        term = term * b;
        term *= Rational(1) / Rational(static_cast<long>(k));
        if (k == n) {
            for (const auto& v : term.data())
                if (!v.is_zero()) return std::nullopt;
            break;
        }
        result += term;
    }
    return result;
}

MatrixCD jordan_block_exp(ComplexD lambda, std::size_t m, double t) {
    if (!std::isfinite(t)) throw UsageError("jordan_block_exp: time must be finite");
    MatrixCD e(m);
    const double mag = std::exp(lambda.re * t);
    const ComplexD phase{mag * std::cos(lambda.im * t), mag * std::sin(lambda.im * t)};
    double coeff = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (k > 0) coeff *= t / static_cast<double>(k);
        for (std::size_t i = 0; i + k < m; ++i) e(i, i + k) = phase * ComplexD(coeff);
    }
    return e;
}

std::vector<std::size_t> power_rank_sequence(const MatrixCQ& a, const ComplexQ& lambda, std::size_t kmax) {
    if (kmax < 1) throw UsageError("power_rank_sequence: kmax must be at least 1");
    return ranks_of_powers(a.shifted(lambda), kmax, 0.0);
}

std::vector<std::size_t> power_rank_sequence(const MatrixQ& a, const ComplexQ& lambda, std::size_t kmax) {
    if (kmax < 1) throw UsageError("power_rank_sequence: kmax must be at least 1");
    if (lambda.im.is_zero()) return ranks_of_powers(a.shifted(lambda.re), kmax, 0.0);
    return power_rank_sequence(to_complex(a), lambda, kmax);
}

std::vector<std::size_t> power_rank_sequence(const MatrixCD& a, ComplexD lambda, std::size_t kmax, double tol) {
    if (kmax < 1) throw UsageError("power_rank_sequence: kmax must be at least 1");
    return ranks_of_powers(a.shifted(lambda), kmax, tol);
}

std::vector<std::size_t> power_rank_sequence(const MatrixD& a, ComplexD lambda, std::size_t kmax, double tol) {
    if (kmax < 1) throw UsageError("power_rank_sequence: kmax must be at least 1");
    if (lambda.im == 0.0) return ranks_of_powers(a.shifted(lambda.re), kmax, tol);
    return power_rank_sequence(to_complex(a), lambda, kmax, tol);
}

std::vector<std::size_t> factor_power_rank_sequence(const MatrixQ& a, const PolyQ& f, std::size_t kmax) {
    const MatrixQ b = evaluate(f, a);
    std::vector<std::size_t> out{a.size()};
    MatrixQ p = MatrixQ::identity(a.size());
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (k >= 2 && out[k - 1] == out[k - 2]) {
            out.push_back(out.back());
            continue;
        }
        p = p * b;
        out.push_back(rank(p));
    }
    return out;
}

}  // namespace flowclass::numkit
