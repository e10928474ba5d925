#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "motive/errors.hpp"

namespace motive {

using Int = boost::multiprecision::cpp_int;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

// a mod m in [0, m) for m > 0.
inline Int pos_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Dense row-major matrix over Z.  Zero-sized dimensions are legal and show up
// all the time as matrices of maps into or out of the trivial group.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw validation_error("matrix dimensions must be nonnegative");
    }
    IntMatrix(int rows, int cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != std::size_t(rows) * cols)
            throw validation_error("matrix entry count does not match dimensions");
    }
    // Row-major initializer:  IntMatrix{{1,2},{3,4}}.
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
        rows_ = int(rows.size());
        cols_ = rows_ ? int(rows.begin()->size()) : 0;
        a_.reserve(std::size_t(rows_) * cols_);
        for (const auto& r : rows) {
            if (int(r.size()) != cols_) throw validation_error("ragged matrix initializer");
            for (const auto& x : r) a_.push_back(x);
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw validation_error("matrix product shape mismatch");
        IntMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& x = (*this)(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    if (o(k, j) != 0) r(i, j) += x * o(k, j);
            }
        return r;
    }
    IntMatrix operator+(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw validation_error("matrix sum shape mismatch");
        IntMatrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    IntMatrix operator-(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw validation_error("matrix sum shape mismatch");
        IntMatrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }
    IntMatrix operator-() const {
        IntMatrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    IntMatrix operator*(const Int& c) const {
        IntMatrix r = *this;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    IntMatrix transposed() const {
        IntMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<Int> col(int j) const {
        std::vector<Int> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<Int> row(int i) const {
        std::vector<Int> v(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<Int>& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    // Columns of `this` followed by columns of `o`.
    IntMatrix augmented(const IntMatrix& o) const {
        if (rows_ != o.rows_) throw validation_error("augment row mismatch");
        IntMatrix r(rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }

    IntMatrix submatrix(int row0, int col0, int nrows, int ncols) const {
        IntMatrix r(nrows, ncols);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(row0 + i, col0 + j);
        return r;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (int(x.size()) != cols_) throw validation_error("matrix-vector shape mismatch");
        std::vector<Int> r(rows_);
        for (int i = 0; i < rows_; ++i) {
            Int s = 0;
            for (int j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) s += (*this)(i, j) * x[j];
            r[i] = s;
        }
        return r;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << rows_ << "x" << cols_ << " [";
        for (int i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        }
        os << "]";
        return os.str();
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

inline IntMatrix operator*(const Int& c, const IntMatrix& m) { return m * c; }

// Kronecker product; pair (i,j) of row indices maps to i*b.rows()+j.
inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    if (b(k, l) != 0) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

// Block-diagonal assembly.
inline IntMatrix block_diag(const std::vector<IntMatrix>& blocks) {
    int rows = 0, cols = 0;
    for (const auto& b : blocks) rows += b.rows(), cols += b.cols();
    IntMatrix r(rows, cols);
    int i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) r(i0 + i, j0 + j) = b(i, j);
        i0 += b.rows(), j0 += b.cols();
    }
    return r;
}

}  // namespace motive
