#pragma once

#include <optional>
#include <vector>

#include "core/error.hpp"
#include "core/scalar.hpp"

namespace lefvar {

/// Dense matrix over an exact ring, row-major.
template <class R>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<R> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, R(0)) {}

    R& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const R& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = R(1);
        return m;
    }

    bool is_zero() const
    {
        for (const auto& x : a)
            if (!x.is_zero())
                return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y)
    {
        require(x.rows == y.rows && x.cols == y.cols, Errc::dimension_mismatch,
                "matrix size mismatch");
        Matrix out(x.rows, x.cols);
        for (std::size_t k = 0; k < x.a.size(); ++k)
            out.a[k] = x.a[k] - y.a[k];
        return out;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        require(x.cols == y.rows, Errc::dimension_mismatch, "matrix size mismatch");
        Matrix out(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (x.at(i, k).is_zero())
                    continue;
                for (int j = 0; j < y.cols; ++j)
                    out.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return out;
    }

    std::vector<R> apply(const std::vector<R>& v) const
    {
        require(int(v.size()) == cols, Errc::dimension_mismatch, "vector size mismatch");
        std::vector<R> out(rows, R(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero())
                    out[i] += at(i, j) * v[j];
        return out;
    }
};

inline Matrix<Scalar> body_matrix(const Matrix<Dual>& m)
{
    Matrix<Scalar> out(m.rows, m.cols);
    for (std::size_t k = 0; k < m.a.size(); ++k)
        out.a[k] = m.a[k].body();
    return out;
}

inline Matrix<Scalar> slope_matrix(const Matrix<Dual>& m)
{
    Matrix<Scalar> out(m.rows, m.cols);
    for (std::size_t k = 0; k < m.a.size(); ++k)
        out.a[k] = m.a[k].slope();
    return out;
}

namespace detail {

/// Row echelon over the field of Gaussian rationals, reducing `rhs`
/// columns alongside. Pivot choice: first nonzero entry scanning down, so
/// the elimination is deterministic. Returns pivot column per row.
inline std::vector<int> eliminate(Matrix<Scalar>& m, Matrix<Scalar>& rhs)
{
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j)
                std::swap(m.at(piv, j), m.at(row, j));
        if (piv != row)
            for (int j = 0; j < rhs.cols; ++j)
                std::swap(rhs.at(piv, j), rhs.at(row, j));
        Scalar inv = m.at(row, col).inv();
        for (int j = col; j < m.cols; ++j)
            m.at(row, j) *= inv;
        for (int j = 0; j < rhs.cols; ++j)
            rhs.at(row, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col).is_zero())
                continue;
            Scalar f = m.at(i, col);
            for (int j = col; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(row, j);
            for (int j = 0; j < rhs.cols; ++j)
                rhs.at(i, j) -= f * rhs.at(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    return pivot_col;
}

} // namespace detail

inline int rank(Matrix<Scalar> m)
{
    Matrix<Scalar> rhs(m.rows, 0);
    return int(detail::eliminate(m, rhs).size());
}

/// Particular solutions of M X = B over the field (free variables set to
/// zero). nullopt when the system is inconsistent.
inline std::optional<Matrix<Scalar>> solve_multi(Matrix<Scalar> m, Matrix<Scalar> b)
{
    require(m.rows == b.rows, Errc::dimension_mismatch, "rhs rows mismatch");
    auto pivots = detail::eliminate(m, b);
    int r = int(pivots.size());
    for (int i = r; i < m.rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            if (!b.at(i, j).is_zero())
                return std::nullopt;
    Matrix<Scalar> x(m.cols, b.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < b.cols; ++j)
            x.at(pivots[i], j) = b.at(i, j);
    return x;
}

inline std::optional<std::vector<Scalar>> solve(const Matrix<Scalar>& m,
                                                const std::vector<Scalar>& b)
{
    require(int(b.size()) == m.rows, Errc::dimension_mismatch, "rhs size mismatch");
    Matrix<Scalar> rhs(m.rows, 1);
    for (int i = 0; i < m.rows; ++i)
        rhs.at(i, 0) = b[i];
    auto x = solve_multi(m, rhs);
    if (!x)
        return std::nullopt;
    std::vector<Scalar> out(m.cols);
    for (int i = 0; i < m.cols; ++i)
        out[i] = x->at(i, 0);
    return out;
}

/// Basis of the null space, one vector per free column.
inline std::vector<std::vector<Scalar>> kernel(Matrix<Scalar> m)
{
    Matrix<Scalar> rhs(m.rows, 0);
    auto pivots = detail::eliminate(m, rhs);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Scalar> v(m.cols, Scalar(0));
        v[free] = Scalar(1);
        for (int i = 0; i < int(pivots.size()); ++i)
            v[pivots[i]] = -m.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Matrix<Scalar> inverse(const Matrix<Scalar>& m)
{
    require(m.rows == m.cols, Errc::singular, "inverse of non-square matrix");
    auto x = solve_multi(m, Matrix<Scalar>::identity(m.rows));
    require(x.has_value() && rank(m) == m.rows, Errc::singular, "matrix not invertible");
    return *x;
}

/// Layered dual-number solve: x0 = M0^-1 b0, then M0 x1 = b1 - M1 x0.
/// Dual numbers have zero divisors, so elimination runs over the base
/// field only; requires the body part to be solvable at both layers.
inline std::optional<std::vector<Dual>> solve(const Matrix<Dual>& m, const std::vector<Dual>& b)
{
    require(int(b.size()) == m.rows, Errc::dimension_mismatch, "rhs size mismatch");
    Matrix<Scalar> m0 = body_matrix(m);
    Matrix<Scalar> m1 = slope_matrix(m);
    std::vector<Scalar> b0(m.rows), b1(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        b0[i] = b[i].body();
        b1[i] = b[i].slope();
    }
    auto x0 = solve(m0, b0);
    if (!x0)
        return std::nullopt;
    std::vector<Scalar> r1 = m1.apply(*x0);
    for (int i = 0; i < m.rows; ++i)
        r1[i] = b1[i] - r1[i];
    auto x1 = solve(m0, r1);
    if (!x1)
        return std::nullopt;
    std::vector<Dual> out(m.cols);
    for (int i = 0; i < m.cols; ++i)
        out[i] = Dual((*x0)[i], (*x1)[i]);
    return out;
}

/// Exact solve with error reporting per the library contract: Singular
/// when a square system's matrix is degenerate, Inconsistent when no
/// solution exists.
template <class R>
std::vector<R> linear_solve(const Matrix<R>& m, const std::vector<R>& b)
{
    auto x = solve(m, b);
    if (!x) {
        if (m.rows == m.cols) {
            Matrix<Scalar> m0;
            if constexpr (is_dual_v<R>)
                m0 = body_matrix(m);
            else
                m0 = m;
            if (rank(m0) < m.rows)
                fail(Errc::singular, "square system with singular matrix");
        }
        fail(Errc::inconsistent, "no exact solution");
    }
    return *x;
}

} // namespace lefvar
