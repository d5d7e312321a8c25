#pragma once

#include "cuntzlab/scalar.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cuntzlab {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = conjugate((*this)(i, j));
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = (*this)(i, j);
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (is_zero(aik, 0.0))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    Matrix& operator*=(const T& c) {
        for (auto& x : data_)
            x *= c;
        return *this;
    }

    bool approx_equal(const Matrix& o, double tol) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!near(data_[i], o.data_[i], tol))
                return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
std::vector<T> matvec(const Matrix<T>& a, const std::vector<T>& x) {
    std::vector<T> y(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            y[i] += a(i, j) * x[j];
    return y;
}

/// Reduces `a` to reduced row echelon form in place and returns the pivot
/// columns. Entries with magnitude <= tol count as zero (exact types ignore tol).
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a, double tol) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t best = a.rows();
        double best_mag = 0.0;
        for (std::size_t r = row; r < a.rows(); ++r) {
            if (is_zero(a(r, col), tol))
                continue;
            double mag = magnitude(a(r, col));
            if (best == a.rows() || mag > best_mag) {
                best = r;
                best_mag = mag;
            }
        }
        if (best == a.rows())
            continue;
        if (best != row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(best, j), a(row, j));
        T inv = T(1) / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(row, j) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || is_zero(a(r, col), 0.0))
                continue;
            T f = a(r, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(r, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    if constexpr (!std::is_same_v<T, Exact> && !std::is_same_v<T, Rational>) {
        for (std::size_t r = row; r < a.rows(); ++r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (is_zero(a(r, j), tol))
                    a(r, j) = T(0);
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a, double tol) {
    return rref(a, tol).size();
}

/// Solves a x = b for square a. Returns nullopt when a is singular.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b, double tol) {
    const std::size_t n = a.rows();
    Matrix<T> aug(n, n + b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            aug(i, n + j) = b(i, j);
    }
    auto piv = rref(aug, tol);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    Matrix<T> x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(i, j) = aug(i, n + j);
    return x;
}

template <class R>
struct AffineSolution {
    bool consistent = false;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    std::vector<R> x;  // minimum-norm particular solution
    double residual = 0.0;
};

/// Minimum-norm solution of the real system a x = b, with the rank of a.
template <class R>
AffineSolution<R> solve_min_norm(const Matrix<R>& a, const std::vector<R>& b, double tol) {
    const std::size_t m = a.rows(), n = a.cols();
    Matrix<R> aug(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug, tol);
    AffineSolution<R> out;
    out.consistent = piv.empty() || piv.back() != n;
    if (!out.consistent) {
        out.rank = piv.size() - 1;
        out.nullity = n - out.rank;
        return out;
    }
    out.rank = piv.size();
    out.nullity = n - out.rank;

    std::vector<bool> is_pivot(n, false);
    for (auto c : piv)
        is_pivot[c] = true;
    std::vector<R> xp(n, R(0));
    for (std::size_t r = 0; r < piv.size(); ++r)
        xp[piv[r]] = aug(r, n);

    // Null space basis: one vector per free column.
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    const std::size_t f = free_cols.size();
    if (f > 0) {
        Matrix<R> nb(n, f);
        for (std::size_t k = 0; k < f; ++k) {
            nb(free_cols[k], k) = R(1);
            for (std::size_t r = 0; r < piv.size(); ++r)
                nb(piv[r], k) = R(-aug(r, free_cols[k]));
        }
        // Project xp onto the orthogonal complement of the null space.
        Matrix<R> ntn = nb.transpose() * nb;
        Matrix<R> rhs(f, 1);
        for (std::size_t k = 0; k < f; ++k)
            for (std::size_t c = 0; c < n; ++c)
                rhs(k, 0) += nb(c, k) * xp[c];
        auto t = solve(ntn, rhs, tol);
        if (t) {
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t k = 0; k < f; ++k)
                    xp[c] -= nb(c, k) * (*t)(k, 0);
        }
    }
    out.x = std::move(xp);
    double res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        R s = R(-b[i]);
        for (std::size_t j = 0; j < n; ++j)
            s += a(i, j) * out.x[j];
        res = std::max(res, magnitude(s));
    }
    out.residual = res;
    return out;
}

template <class F>
bool is_positive(const F& x, double tol) {
    if constexpr (is_exact_v<F>)
        return sgn(real_part(x)) > 0;
    else
        return real_part(x) > tol;
}

template <class F>
struct PivotedLdl {
    std::vector<std::size_t> pivots;
    std::vector<F> diag;  // residual diagonal at each pivot (real, positive)
    bool psd = true;
};

/// Greedy largest-remaining-diagonal pivoted LDL^H of a Hermitian matrix,
/// without square roots so that exact mode stays in Q(i). Ties go to the
/// lowest index. Stops once no remaining diagonal is positive; the matrix is
/// reported PSD iff the remaining Schur complement vanishes.
template <class F>
PivotedLdl<F> pivoted_ldl(Matrix<F> s, double tol) {
    const std::size_t n = s.rows();
    PivotedLdl<F> out;
    std::vector<bool> used(n, false);
    for (;;) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i] || !is_positive(s(i, i), tol))
                continue;
            if (best == n || real_part(s(i, i)) > real_part(s(best, best)))
                best = i;
        }
        if (best == n)
            break;
        used[best] = true;
        out.pivots.push_back(best);
        F d = s(best, best);
        out.diag.push_back(d);
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i] || is_zero(s(i, best), 0.0))
                continue;
            F li = s(i, best) / d;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j])
                    continue;
                s(i, j) -= li * s(best, j);
            }
        }
    }
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max(scale, magnitude(s(i, i)));
    for (std::size_t i = 0; i < n && out.psd; ++i) {
        if (used[i])
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j])
                continue;
            if (!is_zero(s(i, j), 100.0 * tol * scale)) {
                out.psd = false;
                break;
            }
        }
    }
    return out;
}

}  // namespace cuntzlab
