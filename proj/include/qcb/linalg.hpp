#pragma once

#include "qcb/ratfun.hpp"

#include <cassert>
#include <vector>

namespace qcb {

inline bool lin_is_zero(const RatFun& x) { return x.is_zero(); }
inline bool lin_is_zero(const Rat& x) { return x == 0; }

/// Dense matrix over an exact field (RatFun or Rat).
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int r, int c) { return data_[size_t(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return data_[size_t(r) * cols_ + c]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (lin_is_zero(a)) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    if (lin_is_zero(o(k, j))) continue;
                    r(i, j) += a * o(k, j);
                }
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    Mat scaled(const T& s) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
        return r;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        assert((int)x.size() == cols_);
        std::vector<T> y(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!lin_is_zero((*this)(i, j)) && !lin_is_zero(x[j])) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!lin_is_zero(x)) return false;
        return true;
    }

private:
    int rows_, cols_;
    std::vector<T> data_;
};

/// Row-reduce in place to reduced echelon form with deterministic pivoting
/// (first nonzero entry in row-major order).  Returns pivot columns.
template <class T>
std::vector<int> row_reduce(Mat<T>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!lin_is_zero(m(r, col))) { p = r; break; }
        if (p < 0) continue;
        if (p != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        T inv = T(1) / m(row, col);
        for (int c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || lin_is_zero(m(r, col))) continue;
            T f = m(r, col);
            for (int c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
int rank(Mat<T> m) {
    return (int)row_reduce(m).size();
}

/// Result of solving A x = b: exact solution, exact rank, or inconsistency.
template <class T>
struct SolveResult {
    enum class Status { unique, underdetermined, inconsistent };
    Status status;
    std::vector<T> solution;  // one solution when consistent
    int rank = 0;
};

template <class T>
SolveResult<T> solve(const Mat<T>& a, const std::vector<T>& b) {
    assert((int)b.size() == a.rows());
    Mat<T> aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = row_reduce(aug);
    SolveResult<T> res;
    if (!pivots.empty() && pivots.back() == a.cols()) {
        res.status = SolveResult<T>::Status::inconsistent;
        res.rank = (int)pivots.size() - 1;
        return res;
    }
    res.rank = (int)pivots.size();
    res.solution.assign(a.cols(), T(0));
    for (size_t i = 0; i < pivots.size(); ++i) res.solution[pivots[i]] = aug((int)i, a.cols());
    res.status = res.rank == a.cols() ? SolveResult<T>::Status::unique
                                      : SolveResult<T>::Status::underdetermined;
    return res;
}

/// Basis of the kernel of A, as columns of the returned matrix.
template <class T>
Mat<T> kernel_basis(const Mat<T>& a) {
    Mat<T> m = a;
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    int nfree = a.cols() - (int)pivots.size();
    Mat<T> k(a.cols(), nfree);
    int idx = 0;
    for (int c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        k(c, idx) = T(1);
        for (size_t i = 0; i < pivots.size(); ++i) k(pivots[i], idx) = -m((int)i, c);
        ++idx;
    }
    return k;
}

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    Mat<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    auto pivots = row_reduce(aug);
    if ((int)pivots.size() != n || pivots[n - 1] != n - 1) return std::nullopt;
    Mat<T> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Solve a X = b (multi-rhs) over a field; nullopt when a is singular.
template <class T>
std::optional<Mat<T>> field_solve_multi(const Mat<T>& a, const Mat<T>& b) {
    assert(a.rows() == a.cols() && b.rows() == a.rows());
    int n = a.rows();
    Mat<T> aug(n, n + b.cols());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
    }
    auto pivots = row_reduce(aug);
    if ((int)pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    Mat<T> x(n, b.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
    return x;
}

// Fraction-free (Bareiss) elimination over Z[v, v^{-1}].  All divisions are
// exact, so no gcd normalization happens during elimination; rational
// functions appear only in back substitution.

int laurent_rank(Mat<Laurent> m);

/// Greedy principal-minor basis of a symmetric matrix: scan the diagonal in
/// order, keep an index when the bordered principal minor stays nonsingular.
std::vector<int> greedy_principal_basis(Mat<Laurent> g);

struct LaurentInverse {
    Mat<Laurent> adj;  // adjugate; the inverse is adj/det
    Laurent det;
};

/// Exact adjugate/determinant of a nonsingular square matrix via fraction-free
/// Bareiss-Jordan elimination; nullopt when singular.
std::optional<LaurentInverse> laurent_inverse(const Mat<Laurent>& a);

/// Solve a x = b for square nonsingular a (multi-rhs).
std::optional<Mat<RatFun>> laurent_solve_multi(const Mat<Laurent>& a, const Mat<Laurent>& b);

}  // namespace qcb
