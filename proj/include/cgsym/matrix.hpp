#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cgsym/errors.hpp"
#include "cgsym/vertex_set.hpp"

namespace cgsym {

/// Small row-major dense matrix of doubles. Everything here targets the
/// desk scale of at most 64x64; pivoted elimination is accurate enough.
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) {
        return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(j)];
    }
    double operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(j)];
    }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    DenseMatrix operator*(const DenseMatrix& o) const {
        if (cols_ != o.rows_) throw error("matrix product: shape mismatch");
        DenseMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                double v = (*this)(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    DenseMatrix operator-(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw error("matrix difference: shape mismatch");
        DenseMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }

    DenseMatrix operator+(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw error("matrix sum: shape mismatch");
        DenseMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }

    DenseMatrix submatrix(const std::vector<int>& row_idx,
                          const std::vector<int>& col_idx) const {
        DenseMatrix r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                r(static_cast<int>(i), static_cast<int>(j)) =
                    (*this)(row_idx[i], col_idx[j]);
        return r;
    }

    /// Rows and columns picked by 1-based vertex sets, in ascending order.
    DenseMatrix submatrix(VertexSet rows, VertexSet cols) const {
        std::vector<int> ri, ci;
        for (int v : rows.elements()) ri.push_back(v - 1);
        for (int v : cols.elements()) ci.push_back(v - 1);
        return submatrix(ri, ci);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::fabs(v));
        return m;
    }

    double one_norm() const {
        double best = 0.0;
        for (int j = 0; j < cols_; ++j) {
            double s = 0.0;
            for (int i = 0; i < rows_; ++i) s += std::fabs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    double max_asymmetry() const {
        double m = 0.0;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
        return m;
    }

private:
    int rows_, cols_;
    std::vector<double> a_;
};

/// LU determinant with partial pivoting.
inline double determinant(DenseMatrix a) {
    if (a.rows() != a.cols()) throw error("determinant: matrix not square");
    const int n = a.rows();
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a(r, c)) > std::fabs(a(p, c))) p = r;
        if (a(p, c) == 0.0) return 0.0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (int r = c + 1; r < n; ++r) {
            double f = a(r, c) / a(c, c);
            for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Gauss-Jordan inverse with partial pivoting. Rejects matrices whose
/// 1-norm condition estimate exceeds `condition_bound`.
inline DenseMatrix inverse(const DenseMatrix& m, double condition_bound = 1e12) {
    if (m.rows() != m.cols()) throw singular_matrix("inverse: matrix not square");
    const int n = m.rows();
    DenseMatrix a = m, inv = DenseMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a(r, c)) > std::fabs(a(p, c))) p = r;
        if (a(p, c) == 0.0) throw singular_matrix("inverse: singular matrix");
        if (p != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        double piv = a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a(r, c);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    if (m.one_norm() * inv.one_norm() > condition_bound)
        throw singular_matrix("inverse: condition number exceeds bound");
    return inv;
}

/// Lower-triangular Cholesky factor; rejects non-positive-definite input.
inline DenseMatrix cholesky(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw singular_matrix("cholesky: matrix not square");
    const int n = m.rows();
    DenseMatrix l(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0)
                    throw singular_matrix("cholesky: matrix not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

}  // namespace cgsym
