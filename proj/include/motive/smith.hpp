#pragma once

#include <optional>
#include <vector>

#include "motive/int_matrix.hpp"

namespace motive {

// u * a * v == d with u, v unimodular, d diagonal, d[i] >= 0 and d[i] | d[i+1].
// The inverse transforms are carried along so that kernels, images and
// cokernels come with explicit generator lifts (a == uinv * d * vinv).
struct SmithDecomposition {
    IntMatrix u, uinv, v, vinv;
    std::vector<Int> diag;  // length min(rows, cols)
    int rows = 0, cols = 0;

    IntMatrix d() const {
        IntMatrix m(rows, cols);
        for (int i = 0; i < int(diag.size()); ++i) m(i, i) = diag[i];
        return m;
    }
    int rank() const {
        int r = 0;
        for (const auto& x : diag)
            if (x != 0) ++r;
        return r;
    }
};

namespace detail {

struct SmithWorker {
    IntMatrix d, u, uinv, v, vinv;

    explicit SmithWorker(const IntMatrix& a)
        : d(a),
          u(IntMatrix::identity(a.rows())),
          uinv(IntMatrix::identity(a.rows())),
          v(IntMatrix::identity(a.cols())),
          vinv(IntMatrix::identity(a.cols())) {}

    // Row ops act as d <- E d; u <- E u; uinv <- uinv E^{-1}.
    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
        for (int r = 0; r < uinv.rows(); ++r) std::swap(uinv(r, i), uinv(r, j));
    }
    void add_row(int i, int j, const Int& c) {  // row i += c * row j
        if (c == 0) return;
        for (int k = 0; k < d.cols(); ++k) d(i, k) += c * d(j, k);
        for (int k = 0; k < u.cols(); ++k) u(i, k) += c * u(j, k);
        for (int r = 0; r < uinv.rows(); ++r) uinv(r, j) -= c * uinv(r, i);
    }
    void negate_row(int i) {
        for (int k = 0; k < d.cols(); ++k) d(i, k) = -d(i, k);
        for (int k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
        for (int r = 0; r < uinv.rows(); ++r) uinv(r, i) = -uinv(r, i);
    }
    // Column ops act as d <- d F; v <- v F; vinv <- F^{-1} vinv.
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
        for (int c = 0; c < vinv.cols(); ++c) std::swap(vinv(i, c), vinv(j, c));
    }
    void add_col(int j, int k, const Int& c) {  // col j += c * col k
        if (c == 0) return;
        for (int r = 0; r < d.rows(); ++r) d(r, j) += c * d(r, k);
        for (int r = 0; r < v.rows(); ++r) v(r, j) += c * v(r, k);
        for (int t = 0; t < vinv.cols(); ++t) vinv(k, t) -= c * vinv(j, t);
    }

    void run() {
        const int m = d.rows(), n = d.cols();
        const int steps = std::min(m, n);
        for (int t = 0; t < steps; ++t) {
            for (;;) {
                // Re-selecting the pivot every sweep keeps the working entries
                // small; a one-time selection per step lets them snowball.
                if (!select_pivot(t)) break;
                bool col_clean = reduce_column(t);
                bool row_clean = reduce_row(t);
                if (!col_clean || !row_clean) continue;
                // Pivot must divide the rest of the submatrix; if not, pull
                // the offending row in and keep reducing.
                int bi = -1;
                for (int i = t + 1; i < m && bi < 0; ++i)
                    for (int j = t + 1; j < n; ++j)
                        if (d(i, j) % d(t, t) != 0) {
                            bi = i;
                            break;
                        }
                if (bi < 0) break;
                add_row(t, bi, 1);
            }
            if (d(t, t) < 0) negate_row(t);
        }
    }

    // Quotient minimizing |a - q b|, so leftovers are at most half the pivot.
    static Int balanced_quotient(const Int& a, const Int& b) {
        Int q = a / b;
        Int r = a - q * b;
        if (2 * abs(r) > abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
        return q;
    }

    // Move the submatrix entry of least magnitude to (t, t).  Ties go to the
    // entry with the fewest other nonzeros in its row and column, which keeps
    // fill-in down on the sparse block matrices we mostly see.
    bool select_pivot(int t) {
        std::vector<int> row_cnt(d.rows(), 0), col_cnt(d.cols(), 0);
        for (int i = t; i < d.rows(); ++i)
            for (int j = t; j < d.cols(); ++j)
                if (d(i, j) != 0) ++row_cnt[i], ++col_cnt[j];
        int bi = -1, bj = -1;
        for (int i = t; i < d.rows(); ++i)
            for (int j = t; j < d.cols(); ++j) {
                if (d(i, j) == 0) continue;
                if (bi < 0 || abs(d(i, j)) < abs(d(bi, bj)) ||
                    (abs(d(i, j)) == abs(d(bi, bj)) &&
                     row_cnt[i] + col_cnt[j] < row_cnt[bi] + col_cnt[bj]))
                    bi = i, bj = j;
            }
        if (bi < 0) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    bool reduce_column(int t) {
        bool clean = true;
        for (int i = t + 1; i < d.rows(); ++i) {
            if (d(i, t) == 0) continue;
            add_row(i, t, -balanced_quotient(d(i, t), d(t, t)));
            if (d(i, t) != 0) clean = false;
        }
        return clean;
    }

    bool reduce_row(int t) {
        bool clean = true;
        for (int j = t + 1; j < d.cols(); ++j) {
            if (d(t, j) == 0) continue;
            add_col(j, t, -balanced_quotient(d(t, j), d(t, t)));
            if (d(t, j) != 0) clean = false;
        }
        return clean;
    }
};

}  // namespace detail

inline SmithDecomposition smith(const IntMatrix& a) {
    detail::SmithWorker w(a);
    w.run();
    SmithDecomposition s;
    s.rows = a.rows();
    s.cols = a.cols();
    s.u = std::move(w.u);
    s.uinv = std::move(w.uinv);
    s.v = std::move(w.v);
    s.vinv = std::move(w.vinv);
    s.diag.resize(std::min(a.rows(), a.cols()));
    for (int i = 0; i < int(s.diag.size()); ++i) s.diag[i] = w.d(i, i);
    // Costs a multiply per call but catches bookkeeping bugs at the source.
    if (s.u * a * s.v != w.d) throw error("smith: transform identity violated");
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i)
        if (s.diag[i] < 0 || (s.diag[i] != 0 && s.diag[i + 1] % s.diag[i] != 0) ||
            (s.diag[i] == 0 && s.diag[i + 1] != 0))
            throw error("smith: divisibility chain violated");
    return s;
}

// One integer solution x of a x = b, if any.
inline std::optional<std::vector<Int>> solve_integer(const SmithDecomposition& s,
                                                     const std::vector<Int>& b) {
    if (int(b.size()) != s.rows) throw validation_error("solve_integer: rhs size mismatch");
    std::vector<Int> c = s.u.apply(b);
    std::vector<Int> y(s.cols, Int(0));
    for (int i = 0; i < s.rows; ++i) {
        if (i < int(s.diag.size()) && s.diag[i] != 0) {
            if (c[i] % s.diag[i] != 0) return std::nullopt;
            y[i] = c[i] / s.diag[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
    return solve_integer(smith(a), b);
}

// Columnwise solve a x = rhs; nullopt if any column has no integer solution.
inline std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& rhs) {
    if (a.rows() != rhs.rows()) throw validation_error("solve_integer: rhs shape mismatch");
    SmithDecomposition s = smith(a);
    IntMatrix x(a.cols(), rhs.cols());
    for (int j = 0; j < rhs.cols(); ++j) {
        auto xa = solve_integer(s, rhs.col(j));
        if (!xa) return std::nullopt;
        x.set_col(j, *xa);
    }
    return x;
}

// Columns form a basis of the column span (a lattice basis; may have fewer
// columns than the input).
inline IntMatrix column_basis(const IntMatrix& a) {
    SmithDecomposition s = smith(a);
    int r = s.rank();
    IntMatrix b(a.rows(), r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < a.rows(); ++i) b(i, j) = s.diag[j] * s.uinv(i, j);
    return b;
}

// Basis of the integer kernel {x : a x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
    SmithDecomposition s = smith(a);
    int r = s.rank();
    IntMatrix k(a.cols(), a.cols() - r);
    for (int j = r; j < a.cols(); ++j)
        for (int i = 0; i < a.cols(); ++i) k(i, j - r) = s.v(i, j);
    return k;
}

}  // namespace motive
