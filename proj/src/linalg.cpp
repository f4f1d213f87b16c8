#include "qcb/linalg.hpp"

namespace qcb {

namespace {

Laurent bareiss_div(const Laurent& num, const Laurent& den) {
    auto q = exact_divide(num, den);
    if (!q) throw std::logic_error("bareiss: non-exact division");
    return *q;
}

// Forward elimination of the leading `main_cols` columns with first-nonzero
// pivoting; trailing columns are carried along.  Returns pivot columns; the
// last pivot value is det(a) up to the recorded row-swap sign.
std::vector<int> bareiss_forward(Mat<Laurent>& m, int main_cols, int& swap_sign) {
    std::vector<int> pivots;
    swap_sign = 1;
    Laurent prev(1);
    int row = 0;
    for (int col = 0; col < main_cols && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!m(r, col).is_zero()) { p = r; break; }
        if (p < 0) continue;
        if (p != row) {
            for (int c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
            swap_sign = -swap_sign;
        }
        for (int i = row + 1; i < m.rows(); ++i) {
            for (int c = col + 1; c < m.cols(); ++c)
                m(i, c) = bareiss_div(m(row, col) * m(i, c) - m(i, col) * m(row, c), prev);
            m(i, col) = Laurent();
        }
        prev = m(row, col);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int laurent_rank(Mat<Laurent> m) {
    int sign;
    return (int)bareiss_forward(m, m.cols(), sign).size();
}

std::vector<int> greedy_principal_basis(Mat<Laurent> g) {
    int n = g.rows();
    std::vector<int> sel;
    Laurent prev(1);
    for (int idx = 0; idx < n; ++idx) {
        // Bareiss invariant: g(idx, idx) is the bordered principal minor of
        // the selected set extended by idx.
        if (g(idx, idx).is_zero()) continue;
        const Laurent piv = g(idx, idx);
        for (int i = idx + 1; i < n; ++i)
            for (int j = idx + 1; j <= i; ++j) {
                g(i, j) = bareiss_div(piv * g(i, j) - g(i, idx) * g(idx, j), prev);
                if (i != j) g(j, i) = g(i, j);
            }
        prev = piv;
        sel.push_back(idx);
    }
    return sel;
}

std::optional<Mat<RatFun>> laurent_solve_multi(const Mat<Laurent>& a, const Mat<Laurent>& b) {
    int n = a.rows();
    if (a.cols() != n || b.rows() != n) throw std::invalid_argument("laurent_solve: shape mismatch");
    Mat<Laurent> aug(n, n + b.cols());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
    }
    int sign;
    auto pivots = bareiss_forward(aug, n, sign);
    if ((int)pivots.size() != n) return std::nullopt;
    Mat<RatFun> x(n, b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        for (int i = n - 1; i >= 0; --i) {
            RatFun acc(aug(i, n + c));
            for (int j = i + 1; j < n; ++j)
                if (!aug(i, j).is_zero() && !x(j, c).is_zero()) acc -= RatFun(aug(i, j)) * x(j, c);
            x(i, c) = acc / RatFun(aug(i, i));
        }
    }
    return x;
}

std::optional<LaurentInverse> laurent_inverse(const Mat<Laurent>& a) {
    // Bareiss-Jordan (Montante): two-sided fraction-free elimination of
    // [a | I] to [det*I | adj], every division exact.
    int n = a.rows();
    Mat<Laurent> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = Laurent(1);
    }
    int sign = 1;
    Laurent prev(1);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int r = k; r < n; ++r)
            if (!aug(r, k).is_zero()) { p = r; break; }
        if (p < 0) return std::nullopt;
        if (p != k) {
            for (int c = 0; c < 2 * n; ++c) std::swap(aug(p, c), aug(k, c));
            sign = -sign;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            for (int c = 0; c < 2 * n; ++c) {
                if (c == k) continue;
                aug(i, c) = bareiss_div(aug(k, k) * aug(i, c) - aug(i, k) * aug(k, c), prev);
            }
            aug(i, k) = Laurent();
        }
        prev = aug(k, k);
    }
    LaurentInverse out;
    out.det = n == 0 ? Laurent(1) : (sign < 0 ? -aug(n - 1, n - 1) : aug(n - 1, n - 1));
    out.adj = Mat<Laurent>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.adj(i, j) = sign < 0 ? -aug(i, n + j) : aug(i, n + j);
    return out;
}

}  // namespace qcb
