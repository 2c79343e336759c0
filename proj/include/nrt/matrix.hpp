#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nrt/error.hpp"
#include "nrt/field.hpp"

namespace nrt {

/// Dense row-major matrix over a finite field. Rows are codewords or generators.
class Matrix {
public:
    Matrix() = default;

    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw Error(Errc::dimension_mismatch, "entry count does not match " + shape_string());
        for (auto x : data_)
            if (!field_.contains(x))
                throw Error(Errc::range_error, "entry " + std::to_string(x) + " is not an element of " + field_.name());
    }

    Matrix(Field field, std::initializer_list<std::initializer_list<Elem>> rows)
        : field_(std::move(field)), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error(Errc::dimension_mismatch, "ragged matrix literal");
            for (auto x : r) {
                if (!field_.contains(x))
                    throw Error(Errc::range_error,
                                "entry " + std::to_string(x) + " is not an element of " + field_.name());
                data_.push_back(x);
            }
        }
    }

    static Matrix identity(const Field& field, std::size_t n) {
        Matrix out(field, n, n);
        for (std::size_t i = 0; i < n; ++i) out.data_[i * n + i] = 1;
        return out;
    }

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void set(std::size_t i, std::size_t j, Elem value) {
        if (!field_.contains(value))
            throw Error(Errc::range_error, "entry " + std::to_string(value) + " is not an element of " + field_.name());
        data_[i * cols_ + j] = value;
    }

    std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    // Unchecked mutable access for the elimination kernels; callers keep entries < q.
    std::span<Elem> row_mut(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    std::span<const Elem> entries() const noexcept { return data_; }

    bool row_is_zero(std::size_t i) const {
        const auto r = row(i);
        return std::all_of(r.begin(), r.end(), [](Elem x) { return x == 0; });
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
    }

    Matrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
        if (row0 + nrows > rows_ || col0 + ncols > cols_)
            throw Error(Errc::dimension_mismatch, "submatrix out of range of " + shape_string());
        Matrix out(field_, nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
            std::copy_n(data_.begin() + (row0 + i) * cols_ + col0, ncols, out.data_.begin() + i * ncols);
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
    }

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

inline void require_same_field(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field()))
        throw Error(Errc::field_mismatch, "operands over " + a.field().name() + " and " + b.field().name());
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.rows())
        throw Error(Errc::dimension_mismatch, "cannot multiply " + a.shape_string() + " by " + b.shape_string());
    const Field& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row_mut(i);
        for (std::size_t l = 0; l < a.cols(); ++l) f.axpy(dst, a(i, l), b.row(l));
    }
    return out;
}

inline Matrix transpose(const Matrix& m) {
    Matrix out(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.row_mut(j)[i] = m(i, j);
    return out;
}

/// The 1 x len row vector e_i, with i 1-based.
inline Matrix canonical_vector(std::size_t i, std::size_t len, const Field& field) {
    if (i < 1 || i > len)
        throw Error(Errc::dimension_mismatch,
                    "canonical vector index " + std::to_string(i) + " outside 1.." + std::to_string(len));
    Matrix out(field, 1, len);
    out.set(0, i - 1, 1);
    return out;
}

/// Stacks the rows of a on top of the rows of b.
inline Matrix vstack(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.cols()) throw Error(Errc::dimension_mismatch, "vstack of different widths");
    std::vector<Elem> data(a.entries().begin(), a.entries().end());
    data.insert(data.end(), b.entries().begin(), b.entries().end());
    return Matrix(a.field(), a.rows() + b.rows(), a.cols(), std::move(data));
}

struct RrefResult {
    Matrix reduced;     // R
    std::size_t rank = 0;
    Matrix transform;   // invertible S with R = S * M
};

/// Reduced row echelon form with the row transform that produces it.
inline RrefResult rref(const Matrix& m) {
    const Field& f = m.field();
    RrefResult res{m, 0, Matrix::identity(f, m.rows())};
    Matrix& r = res.reduced;
    Matrix& s = res.transform;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < r.cols() && pivot_row < r.rows(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < r.rows() && r(sel, c) == 0) ++sel;
        if (sel == r.rows()) continue;
        r.swap_rows(sel, pivot_row);
        s.swap_rows(sel, pivot_row);
        const Elem inv = f.inv(r(pivot_row, c));
        f.scale(r.row_mut(pivot_row), inv);
        f.scale(s.row_mut(pivot_row), inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == pivot_row || r(i, c) == 0) continue;
            const Elem factor = f.neg(r(i, c));
            f.axpy(r.row_mut(i), factor, r.row(pivot_row));
            f.axpy(s.row_mut(i), factor, s.row(pivot_row));
        }
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

inline std::size_t rank(const Matrix& m) {
    // Elimination without the transform bookkeeping.
    const Field& f = m.field();
    Matrix r = m;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < r.cols() && pivot_row < r.rows(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < r.rows() && r(sel, c) == 0) ++sel;
        if (sel == r.rows()) continue;
        r.swap_rows(sel, pivot_row);
        const Elem inv = f.inv(r(pivot_row, c));
        for (std::size_t i = pivot_row + 1; i < r.rows(); ++i)
            if (r(i, c) != 0) f.axpy(r.row_mut(i), f.neg(f.mul(r(i, c), inv)), r.row(pivot_row));
        ++pivot_row;
    }
    return pivot_row;
}

inline bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

using Rng = std::mt19937_64;

inline Matrix random_matrix(const Field& field, std::size_t rows, std::size_t cols, Rng& rng) {
    std::uniform_int_distribution<Elem> dist(0, field.order() - 1);
    std::vector<Elem> data(rows * cols);
    for (auto& x : data) x = dist(rng);
    return Matrix(field, rows, cols, std::move(data));
}

inline Matrix random_matrix(const Field& field, std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    return random_matrix(field, rows, cols, rng);
}

/// Invertible upper-triangular square matrix: an element of the group T_m.
class UpperTriangular {
public:
    explicit UpperTriangular(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw Error(Errc::dimension_mismatch, "upper-triangular matrix must be square");
        for (std::size_t i = 0; i < m_.rows(); ++i) {
            if (m_(i, i) == 0)
                throw Error(Errc::invalid_argument, "zero diagonal entry at " + std::to_string(i + 1));
            for (std::size_t j = 0; j < i; ++j)
                if (m_(i, j) != 0)
                    throw Error(Errc::invalid_argument, "nonzero entry below the diagonal at (" +
                                                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }

    static UpperTriangular identity(const Field& field, std::size_t m) {
        return UpperTriangular(Matrix::identity(field, m), trusted{});
    }

    /// T_k placed in the top-left corner of T_m, identity on the remaining coordinates.
    static UpperTriangular embed(const UpperTriangular& t, std::size_t m) {
        const std::size_t k = t.size();
        if (k > m) throw Error(Errc::dimension_mismatch, "cannot embed T_" + std::to_string(k) + " in T_" + std::to_string(m));
        Matrix out = Matrix::identity(t.matrix().field(), m);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) out.row_mut(i)[j] = t(i, j);
        return UpperTriangular(std::move(out), trusted{});
    }

    std::size_t size() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    const Field& field() const noexcept { return m_.field(); }
    Elem operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// T * v for a column vector v given as a span of length m.
    std::vector<Elem> apply(std::span<const Elem> v) const {
        const Field& f = m_.field();
        std::vector<Elem> out(size(), 0);
        for (std::size_t i = 0; i < size(); ++i) {
            Elem acc = 0;
            for (std::size_t j = i; j < size(); ++j)
                if (v[j] != 0) acc = f.add(acc, f.mul(m_(i, j), v[j]));
            out[i] = acc;
        }
        return out;
    }

    UpperTriangular inverse() const {
        // Back substitution column by column: T * X = I with X upper-triangular.
        const Field& f = m_.field();
        const std::size_t m = size();
        Matrix x(f, m, m);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t ii = j + 1; ii-- > 0;) {
                Elem acc = (ii == j) ? 1 : 0;
                for (std::size_t l = ii + 1; l <= j; ++l) acc = f.sub(acc, f.mul(m_(ii, l), x(l, j)));
                x.row_mut(ii)[j] = f.div(acc, m_(ii, ii));
            }
        }
        return UpperTriangular(std::move(x), trusted{});
    }

    friend UpperTriangular operator*(const UpperTriangular& a, const UpperTriangular& b) {
        return UpperTriangular(mat_mul(a.m_, b.m_), trusted{});
    }

    friend bool operator==(const UpperTriangular& a, const UpperTriangular& b) { return a.m_ == b.m_; }

private:
    struct trusted {};
    UpperTriangular(Matrix m, trusted) : m_(std::move(m)) {}

    friend class UpperTriangularBuilder;

    Matrix m_;
};

/// Mutable staging area for algorithms that build a T_m element entry by entry.
/// `build` validates the result.
class UpperTriangularBuilder {
public:
    UpperTriangularBuilder(const Field& field, std::size_t m) : m_(Matrix::identity(field, m)) {}
    explicit UpperTriangularBuilder(const UpperTriangular& t) : m_(t.matrix()) {}

    void set(std::size_t i, std::size_t j, Elem value) { m_.set(i, j, value); }
    Elem operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    UpperTriangular build() && { return UpperTriangular(std::move(m_)); }

private:
    Matrix m_;
};

inline UpperTriangular random_upper_triangular(const Field& field, std::size_t m, Rng& rng) {
    std::uniform_int_distribution<Elem> any(0, field.order() - 1);
    std::uniform_int_distribution<Elem> nonzero(1, field.order() - 1);
    UpperTriangularBuilder b(field, m);
    for (std::size_t i = 0; i < m; ++i) {
        b.set(i, i, nonzero(rng));
        for (std::size_t j = i + 1; j < m; ++j) b.set(i, j, any(rng));
    }
    return std::move(b).build();
}

}  // namespace nrt
