#pragma once

#include "mtt/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mtt {

/// Thrown on incompatible matrix shapes.
class ShapeError : public std::runtime_error {
  public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense matrix over the rationals, row-major. 0xn and nx0 matrices are
/// first-class values; bounded complexes have empty degrees at their ends and
/// every routine here must cope with them.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0)
            throw ShapeError("negative matrix dimension");
    }
    Mat(int rows, int cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows < 0 || cols < 0)
            throw ShapeError("negative matrix dimension");
        if (data_.size() != static_cast<std::size_t>(rows) * cols)
            throw ShapeError("entry count does not match matrix shape");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rational& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    bool operator==(const Mat& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }
    bool operator!=(const Mat& other) const { return !(*this == other); }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    Mat operator-() const {
        Mat m = *this;
        for (auto& x : m.data_)
            x = -x;
        return m;
    }

    Mat operator+(const Mat& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw ShapeError("matrix sum shape mismatch");
        Mat m = *this;
        for (std::size_t i = 0; i < data_.size(); ++i)
            m.data_[i] += other.data_[i];
        return m;
    }
    Mat operator-(const Mat& other) const { return *this + (-other); }

    Mat scaled(const Rational& s) const {
        Mat m = *this;
        for (auto& x : m.data_)
            x *= s;
        return m;
    }

    std::vector<Rational> col(int c) const {
        std::vector<Rational> v(rows_);
        for (int r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

  private:
    int rows_, cols_;
    std::vector<Rational> data_;
};

/// Exact matrix product. Shape mismatch is a hard error, never silent.
inline Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Mat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Rational& bkj = b(k, j);
                if (bkj != 0)
                    out(i, j) += aik * bkj;
            }
        }
    return out;
}

inline std::vector<Rational> matvec(const Mat& a, const std::vector<Rational>& v) {
    if (a.cols() != static_cast<int>(v.size()))
        throw ShapeError("matvec shape mismatch");
    std::vector<Rational> out(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0 && v[k] != 0)
                out[i] += a(i, k) * v[k];
    return out;
}

/// [a | b] side by side.
inline Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows())
        throw ShapeError("hstack row mismatch");
    Mat out(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c)
            out(r, c) = a(r, c);
        for (int c = 0; c < b.cols(); ++c)
            out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

/// a on top of b.
inline Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols())
        throw ShapeError("vstack column mismatch");
    Mat out(a.rows() + b.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            out(r, c) = a(r, c);
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c)
            out(a.rows() + r, c) = b(r, c);
    return out;
}

/// Kronecker product; kron(A, B) acts on a-major, b-minor stacked bases,
/// which is also the row-major vectorization rule vec(A F B) = (A (x) B^T) vec F.
inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    if (b(p, q) != 0)
                        out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return out;
}

namespace detail {

// Elimination runs on denominator-cleared integer rows: cross-multiplication
// updates with a content-gcd pass per touched row keep every intermediate an
// integer (no per-operation rational normalization), and only the final
// back-substitution returns to rationals.

using IntRow = std::vector<BigInt>;

inline IntRow to_int_row(const Mat& m, int r) {
    BigInt scale = 1;
    for (int c = 0; c < m.cols(); ++c)
        scale = lcm(scale, denominator(m(r, c)));
    IntRow row(m.cols());
    for (int c = 0; c < m.cols(); ++c)
        row[c] = numerator(m(r, c)) * (scale / denominator(m(r, c)));
    return row;
}

inline IntRow to_int_row(const std::vector<Rational>& v) {
    BigInt scale = 1;
    for (const auto& x : v)
        scale = lcm(scale, denominator(x));
    IntRow row(v.size());
    for (std::size_t c = 0; c < v.size(); ++c)
        row[c] = numerator(v[c]) * (scale / denominator(v[c]));
    return row;
}

inline void divide_by_content(IntRow& row) {
    BigInt g = 0;
    for (const auto& x : row) {
        if (x != 0)
            g = (g == 0) ? BigInt(abs(x)) : BigInt(gcd(g, x));
        if (g == 1)
            return;
    }
    if (g == 0 || g == 1)
        return;
    for (auto& x : row)
        x /= g;
}

inline int first_nonzero(const IntRow& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0)
            return static_cast<int>(c);
    return -1;
}

/// row -= (row[c] / pivot[c]) * pivot, done integrally:
/// row = row * p - pivot * v, then content-reduced.
inline void cross_reduce(IntRow& row, const IntRow& pivot, int c) {
    const BigInt v = row[c];
    if (v == 0)
        return;
    const BigInt p = pivot[c];
    for (std::size_t k = 0; k < row.size(); ++k)
        row[k] = row[k] * p - pivot[k] * v;
    divide_by_content(row);
}

/// Row echelon form over the integers, by fraction-free (Bareiss)
/// elimination: every update divides exactly by the previous pivot, keeping
/// entries the size of minors with no gcd passes. Pivots are searched in the
/// leading `pivot_limit` columns only, so augmented systems can carry their
/// right-hand sides through the same elimination.
struct Echelon {
    int cols = 0;
    int pivot_limit = 0;
    std::vector<IntRow> rows;     // echelon rows, staircase order
    std::vector<int> pivot_cols;  // ascending

    Echelon(const Mat& m, int limit) : cols(m.cols()), pivot_limit(limit) {
        std::vector<IntRow> pending;
        pending.reserve(m.rows());
        for (int r = 0; r < m.rows(); ++r) {
            IntRow row = to_int_row(m, r);
            divide_by_content(row);
            if (first_nonzero(row) >= 0)
                pending.push_back(std::move(row));
        }
        for (int col = 0; col < pivot_limit && !pending.empty(); ++col) {
            int chosen = -1;
            for (std::size_t r = 0; r < pending.size(); ++r)
                if (pending[r][col] != 0) {
                    chosen = static_cast<int>(r);
                    break;
                }
            if (chosen < 0)
                continue;
            IntRow pivot = std::move(pending[chosen]);
            pending.erase(pending.begin() + chosen);
            std::vector<IntRow> survivors;
            survivors.reserve(pending.size());
            for (auto& row : pending) {
                cross_reduce(row, pivot, col);
                if (first_nonzero(row) >= 0)
                    survivors.push_back(std::move(row));
            }
            pending = std::move(survivors);
            rows.push_back(std::move(pivot));
            pivot_cols.push_back(col);
        }
        leftover = std::move(pending);  // rows with support only beyond pivot_limit
    }

    int rank() const { return static_cast<int>(pivot_cols.size()); }

    /// Rows that survived elimination with no pivot inside pivot_limit;
    /// nonempty exactly when an augmented system is inconsistent somewhere.
    std::vector<IntRow> leftover;

    /// Back-substitution: given values for all non-pivot columns (rational),
    /// fill in the pivot columns so that every echelon row evaluates to 0.
    void back_substitute(std::vector<Rational>& x) const {
        for (int i = rank() - 1; i >= 0; --i) {
            const int pc = pivot_cols[i];
            Rational sum = 0;
            for (int c = pc + 1; c < cols; ++c)
                if (rows[i][c] != 0 && x[c] != 0)
                    sum += Rational(rows[i][c]) * x[c];
            x[pc] = -sum / Rational(rows[i][pc]);
        }
    }
};

}  // namespace detail

/// Rank over the rationals, exact.
inline int rank(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    return detail::Echelon(m, m.cols()).rank();
}

/// An independent spanning set for the column space of m, as the columns of
/// a rows x rank matrix (echelon rows of the transpose). Shrinks wide
/// matrices before they enter further eliminations.
inline Mat column_space_basis(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return Mat(m.rows(), 0);
    const detail::Echelon ech(m.transpose(), m.rows());
    Mat out(m.rows(), ech.rank());
    for (int j = 0; j < ech.rank(); ++j)
        for (int r = 0; r < m.rows(); ++r)
            out(r, j) = Rational(ech.rows[j][r]);
    return out;
}

/// Basis of {v : Mv = 0}, returned as the columns of a cols x nullity matrix:
/// one vector per free column of the echelon form, with that free coordinate
/// set to 1 and pivot coordinates back-substituted.
inline Mat kernel_basis(const Mat& m) {
    if (m.cols() == 0)
        return Mat(0, 0);
    const detail::Echelon ech(m, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : ech.pivot_cols)
        is_pivot[p] = true;
    const int nullity = m.cols() - ech.rank();
    Mat basis(m.cols(), nullity);
    int out_col = 0;
    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col])
            continue;
        std::vector<Rational> x(m.cols());
        x[free_col] = 1;
        ech.back_substitute(x);
        for (int r = 0; r < m.cols(); ++r)
            basis(r, out_col) = x[r];
        ++out_col;
    }
    return basis;
}

/// Solutions of A X = B column by column (free variables 0); nullopt entries
/// mark inconsistent columns.
inline std::vector<std::optional<std::vector<Rational>>> solve_many(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows())
        throw ShapeError("solve shape mismatch");
    const detail::Echelon ech(hstack(a, b), a.cols());
    std::vector<std::optional<std::vector<Rational>>> out(b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        bool consistent = true;
        for (const auto& row : ech.leftover)
            if (row[a.cols() + j] != 0) {
                consistent = false;
                break;
            }
        if (!consistent)
            continue;
        // Solve A x = b_j: fix the j-th augmented column at -1, the other
        // augmented columns and free columns at 0, and back-substitute over
        // the pivot (A) columns.
        std::vector<Rational> x(a.cols() + b.cols());
        x[a.cols() + j] = -1;
        ech.back_substitute(x);
        x.resize(a.cols());
        out[j] = std::move(x);
    }
    return out;
}

/// One solution of Ax = b (free variables set to 0), or nullopt when
/// inconsistent.
inline std::optional<std::vector<Rational>> solve(const Mat& a, const std::vector<Rational>& b) {
    Mat bm(static_cast<int>(b.size()), 1);
    for (std::size_t r = 0; r < b.size(); ++r)
        bm(static_cast<int>(r), 0) = b[r];
    auto res = solve_many(a, bm);
    return res[0];
}

/// Inverse of a square invertible matrix. Throws if singular.
inline Mat inverse(const Mat& m) {
    if (m.rows() != m.cols())
        throw ShapeError("inverse of non-square matrix");
    auto cols = solve_many(m, Mat::identity(m.rows()));
    Mat inv(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c) {
        if (!cols[c])
            throw ShapeError("inverse of singular matrix");
        for (int r = 0; r < m.rows(); ++r)
            inv(r, c) = (*cols[c])[r];
    }
    return inv;
}

namespace detail {

/// Incremental independence/membership structure over a growing set of
/// vectors, on integer rows: each stored row is forward-reduced against the
/// pivots stored before it, so a single in-order reduction pass decides
/// membership exactly.
class SpanTracker {
  public:
    explicit SpanTracker(int dim) : dim_(dim) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    /// Returns true (and absorbs the remainder) if v enlarges the span.
    bool add(const std::vector<Rational>& v) {
        IntRow row = reduced(v);
        const int p = first_nonzero(row);
        if (p < 0)
            return false;
        divide_by_content(row);
        rows_.push_back(std::move(row));
        pivots_.push_back(p);
        return true;
    }

    /// Membership test without absorbing.
    bool contains(const std::vector<Rational>& v) const {
        return first_nonzero(reduced(v)) < 0;
    }

  private:
    IntRow reduced(const std::vector<Rational>& v) const {
        if (static_cast<int>(v.size()) != dim_)
            throw ShapeError("SpanTracker dimension mismatch");
        IntRow row = to_int_row(v);
        for (std::size_t k = 0; k < rows_.size(); ++k)
            cross_reduce(row, rows_[k], pivots_[k]);
        return row;
    }

    int dim_;
    std::vector<IntRow> rows_;
    std::vector<int> pivots_;
};

}  // namespace detail

}  // namespace mtt
