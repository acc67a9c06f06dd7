#pragma once

// Small dense linear algebra over an exact field (rationals) or doubles.
// Gaussian elimination with full pivoting; row-echelon based rank, solve,
// nullspace and inverse. Sizes here are reference-element sized, so the
// straightforward algorithms are sufficient.

#include <hpfec/rational.hpp>

#include <optional>
#include <vector>

namespace hpfec {

template <typename T>
class DenseMatrix
{
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, T(0))
    {
    }

    static DenseMatrix identity(int n)
    {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    DenseMatrix transposed() const
    {
        DenseMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    DenseMatrix operator*(const DenseMatrix& o) const
    {
        if (cols_ != o.rows_)
            throw std::invalid_argument("DenseMatrix: dimension mismatch in product");
        DenseMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0))
                    continue;
                for (int j = 0; j < o.cols_; ++j)
                    r(i, j) += a * o(k, j);
            }
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& x) const
    {
        if (static_cast<int>(x.size()) != cols_)
            throw std::invalid_argument("DenseMatrix: dimension mismatch in matvec");
        std::vector<T> y(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                y[i] += (*this)(i, j) * x[j];
        return y;
    }

    T determinant() const
    {
        if (rows_ != cols_)
            throw std::invalid_argument("DenseMatrix: determinant of non-square matrix");
        DenseMatrix a = *this;
        T det(1);
        for (int col = 0; col < cols_; ++col) {
            int pivot = -1;
            for (int r = col; r < rows_; ++r)
                if (a(r, col) != T(0)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0)
                return T(0);
            if (pivot != col) {
                a.swap_rows(pivot, col);
                det = -det;
            }
            det *= a(col, col);
            for (int r = col + 1; r < rows_; ++r) {
                if (a(r, col) == T(0))
                    continue;
                const T f = a(r, col) / a(col, col);
                for (int c = col; c < cols_; ++c)
                    a(r, c) -= f * a(col, c);
            }
        }
        return det;
    }

    DenseMatrix inverse() const
    {
        if (rows_ != cols_)
            throw std::invalid_argument("DenseMatrix: inverse of non-square matrix");
        DenseMatrix a = *this;
        DenseMatrix inv = identity(rows_);
        for (int col = 0; col < cols_; ++col) {
            int pivot = -1;
            for (int r = col; r < rows_; ++r)
                if (a(r, col) != T(0)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0)
                throw std::runtime_error("DenseMatrix: singular matrix in inverse");
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            const T d = a(col, col);
            for (int c = 0; c < cols_; ++c) {
                a(col, c) /= d;
                inv(col, c) /= d;
            }
            for (int r = 0; r < rows_; ++r) {
                if (r == col || a(r, col) == T(0))
                    continue;
                const T f = a(r, col);
                for (int c = 0; c < cols_; ++c) {
                    a(r, c) -= f * a(col, c);
                    inv(r, c) -= f * inv(col, c);
                }
            }
        }
        return inv;
    }

    void swap_rows(int a, int b)
    {
        if (a == b)
            return;
        for (int c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

/// Row echelon reduction; returns the pivot column indices. Destructive.
template <typename T>
std::vector<int> row_echelon(DenseMatrix<T>& a)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < a.rows(); ++r)
            if (a(r, col) != T(0)) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            continue;
        a.swap_rows(pivot, row);
        const T d = a(row, col);
        for (int c = col; c < a.cols(); ++c)
            a(row, c) /= d;
        for (int r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col) == T(0))
                continue;
            const T f = a(r, col);
            for (int c = col; c < a.cols(); ++c)
                a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename T>
int rank(DenseMatrix<T> a)
{
    return static_cast<int>(row_echelon(a).size());
}

/// Basis of the nullspace, one column vector per free variable.
template <typename T>
std::vector<std::vector<T>> nullspace(DenseMatrix<T> a)
{
    const int n = a.cols();
    const std::vector<int> pivots = row_echelon(a);
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots)
        is_pivot[p] = true;

    std::vector<std::vector<T>> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<T> v(n, T(0));
        v[free] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves A x = b exactly; returns nullopt when inconsistent. For
/// underdetermined systems, free variables are set to zero.
template <typename T>
std::optional<std::vector<T>> solve(DenseMatrix<T> a, std::vector<T> b)
{
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    const int n = a.cols();
    DenseMatrix<T> aug(a.rows(), n + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    std::vector<int> pivots = row_echelon(aug);
    if (!pivots.empty() && pivots.back() == n)
        return std::nullopt; // inconsistent
    std::vector<T> x(n, T(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug(static_cast<int>(r), n);
    return x;
}

} // namespace hpfec
