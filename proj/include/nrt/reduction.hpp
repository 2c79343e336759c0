#pragma once

/*
 * Reductions of generator matrices under NRT isometries and row operations.
 *
 * A k x m block M is acted on by T in T_m through M -> M T^t (column j may
 * receive multiples of later columns) and by row transforms S on the left.
 * The (s1, s2)-admissible transforms are
 *
 *     E(s1, s2) = [ I_s1   *     ]
 *                 [ 0      GL_s2 ]
 *
 * i.e. the bottom s2 rows mix freely and may be added into the top s1 rows,
 * while the top rows themselves are never scaled, swapped or added anywhere.
 *
 * Every reduction returns the transforms it used, so results can be checked
 * with an exact matrix identity.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrt/error.hpp"
#include "nrt/matrix.hpp"
#include "nrt/metric.hpp"
#include "nrt/symmetry.hpp"

namespace nrt {

/// Protected top rows (s1) and free bottom rows (s2) of a k-row matrix.
struct BlockSplit {
    std::size_t s1 = 0;
    std::size_t s2 = 0;

    static BlockSplit protect(std::size_t s1, std::size_t k) {
        if (s1 > k) throw Error(Errc::invalid_argument, "split protects more rows than the matrix has");
        return {s1, k - s1};
    }
    std::size_t rows() const noexcept { return s1 + s2; }
};

/// Certifies out = row_transform * apply_isometry(iso, in).
struct ReductionWitness {
    Matrix row_transform;
    Isometry iso;

    const CodeSpace& space() const noexcept { return iso.space(); }
};

struct TmReduction {
    Matrix reduced;             // M * T^t
    UpperTriangular transform;  // T
};

struct OneChainForm {
    Matrix reduced;
    ReductionWitness witness;
    std::vector<std::size_t> weights;  // nonzero weights attained by the code, increasing
};

struct BlockReduction {
    Matrix reduced;
    ReductionWitness witness;
    std::size_t j_rows = 0;   // nonzero rows of J (0 when the bottom rows were zero)
    std::size_t j_width = 0;  // columns of J: the largest weight among the bottom rows
};

struct ReductionStep {
    std::size_t block = 0;     // original (input) index of the block processed
    std::size_t position = 0;  // where it ends up in the output
    std::size_t s1 = 0;        // protected rows while processing it
    std::size_t new_pivots = 0;
    std::optional<Matrix> row_transform;  // the step's S, only when recorded
};

struct TriangularForm {
    Matrix reduced;
    ReductionWitness witness;
    std::vector<ReductionStep> steps;
};

namespace detail {

// Row operations on a working matrix, mirrored into the accumulated transform
// (and optionally into a per-step transform).
class RowOps {
public:
    RowOps(Matrix& work, Matrix& transform, Matrix* step = nullptr)
        : work_(work), transform_(transform), step_(step), f_(work.field()) {}

    void swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        work_.swap_rows(a, b);
        transform_.swap_rows(a, b);
        if (step_) step_->swap_rows(a, b);
    }

    void scale(std::size_t i, Elem c) {
        f_.scale(work_.row_mut(i), c);
        f_.scale(transform_.row_mut(i), c);
        if (step_) f_.scale(step_->row_mut(i), c);
    }

    // row dst += c * row src
    void add(std::size_t dst, std::size_t src, Elem c) {
        f_.axpy(work_.row_mut(dst), c, work_.row(src));
        f_.axpy(transform_.row_mut(dst), c, transform_.row(src));
        if (step_) f_.axpy(step_->row_mut(dst), c, step_->row(src));
    }

private:
    Matrix& work_;
    Matrix& transform_;
    Matrix* step_;
    Field f_;
};

// Columns [off, off + m) of every row: block <- block * T^t.
inline void apply_columns(Matrix& work, std::size_t off, const UpperTriangular& t) {
    const Field& f = work.field();
    const std::size_t m = t.size();
    std::vector<Elem> old(m);
    for (std::size_t r = 0; r < work.rows(); ++r) {
        auto row = work.row_mut(r).subspan(off, m);
        if (std::all_of(row.begin(), row.end(), [](Elem x) { return x == 0; })) continue;
        std::copy(row.begin(), row.end(), old.begin());
        for (std::size_t i = 0; i < m; ++i) {
            Elem acc = 0;
            for (std::size_t j = i; j < m; ++j)
                if (old[j] != 0 && t(i, j) != 0) acc = f.add(acc, f.mul(t(i, j), old[j]));
            row[i] = acc;
        }
    }
}

// Tm-reduces rows [row_begin, row_end) of the block at `off`, using only the
// triangular group of the sub-chain `cols` (increasing block-local indices);
// coordinates outside `cols` are fixed. Mirrors the induction on the maximum
// row weight: the heaviest row is sent to a canonical vector, then the rest is
// reduced on the columns strictly before it. Among rows of equal weight the
// last one is chosen, as in the inductive step where the bottom row carries
// the maximum weight.
inline UpperTriangular tm_reduce_rows(Matrix& work, std::size_t off, std::size_t m, std::size_t row_begin,
                                      std::size_t row_end, const std::vector<std::size_t>& cols,
                                      UpperTriangular acc) {
    const Field& f = work.field();
    std::vector<bool> active(row_end - row_begin, true);
    std::size_t limit = cols.size();
    while (limit > 0) {
        std::size_t best_t = 0, best_r = 0;
        for (std::size_t r = row_begin; r < row_end; ++r) {
            if (!active[r - row_begin]) continue;
            std::size_t t = limit;
            while (t > 0 && work(r, off + cols[t - 1]) == 0) --t;
            if (t > 0 && t >= best_t) {
                best_t = t;
                best_r = r;
            }
        }
        if (best_t == 0) break;
        std::vector<Elem> prefix(best_t);
        for (std::size_t a = 0; a < best_t; ++a) prefix[a] = work(best_r, off + cols[a]);
        const UpperTriangular local = map_to_canonical(prefix, f);
        UpperTriangularBuilder b(f, m);
        for (std::size_t a = 0; a < best_t; ++a)
            for (std::size_t c = a; c < best_t; ++c) b.set(cols[a], cols[c], local(a, c));
        const UpperTriangular step = std::move(b).build();
        apply_columns(work, off, step);
        acc = step * acc;
        active[best_r - row_begin] = false;
        limit = best_t - 1;
    }
    return acc;
}

// Brings rows [s1, k) of the block to distinct canonical vectors in increasing
// weight order followed by zero rows, using row operations on those rows only
// and a column transform. Returns the weights (1-based, increasing).
inline std::vector<std::size_t> canonicalize_bottom(Matrix& work, std::size_t off, std::size_t m, std::size_t s1,
                                                    RowOps& ops, UpperTriangular& acc) {
    const Field& f = work.field();
    const std::size_t k = work.rows();
    std::vector<std::size_t> pivots;  // block-local columns, found right to left
    std::size_t next = s1;
    for (std::size_t c = m; c-- > 0 && next < k;) {
        std::size_t sel = next;
        while (sel < k && work(sel, off + c) == 0) ++sel;
        if (sel == k) continue;
        ops.swap(sel, next);
        ops.scale(next, f.inv(work(next, off + c)));
        for (std::size_t i = s1; i < k; ++i)
            if (i != next && work(i, off + c) != 0) ops.add(i, next, f.neg(work(i, off + c)));
        pivots.push_back(c);
        ++next;
    }
    const std::size_t r = pivots.size();
    for (std::size_t a = 0; a < r / 2; ++a) ops.swap(s1 + a, s1 + r - 1 - a);
    std::reverse(pivots.begin(), pivots.end());

    // Each pivot column is now a unit vector, so every other entry of a pivot
    // row can be cleared by adding a multiple of its pivot column.
    UpperTriangularBuilder b(f, m);
    bool trivial = true;
    for (std::size_t l = 0; l < r; ++l)
        for (std::size_t c = 0; c < pivots[l]; ++c) {
            const Elem x = work(s1 + l, off + c);
            if (x == 0) continue;
            b.set(c, pivots[l], f.neg(x));
            trivial = false;
        }
    if (!trivial) {
        const UpperTriangular clear = std::move(b).build();
        apply_columns(work, off, clear);
        acc = clear * acc;
    }
    std::vector<std::size_t> weights(r);
    for (std::size_t l = 0; l < r; ++l) weights[l] = pivots[l] + 1;
    return weights;
}

struct BlockStep {
    UpperTriangular transform;
    std::vector<std::size_t> weights;  // weights of the new J rows
};

// One admissible reduction of the block at `off` with s1 protected rows.
inline BlockStep reduce_block(Matrix& work, std::size_t off, std::size_t m, std::size_t s1, RowOps& ops) {
    const Field& f = work.field();
    const std::size_t k = work.rows();
    UpperTriangular acc = UpperTriangular::identity(f, m);
    std::vector<std::size_t> all(m);
    for (std::size_t c = 0; c < m; ++c) all[c] = c;

    bool bottom_zero = true;
    for (std::size_t i = s1; i < k && bottom_zero; ++i)
        for (std::size_t c = 0; c < m; ++c)
            if (work(i, off + c) != 0) {
                bottom_zero = false;
                break;
            }
    if (bottom_zero) return {tm_reduce_rows(work, off, m, 0, k, all, std::move(acc)), {}};

    auto weights = canonicalize_bottom(work, off, m, s1, ops, acc);

    // Clear the protected rows above every pivot of J.
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const std::size_t col = off + weights[l] - 1;
        for (std::size_t i = 0; i < s1; ++i)
            if (work(i, off + weights[l] - 1) != 0) ops.add(i, s1 + l, f.neg(work(i, col)));
    }

    // Reduce [A B] with the triangular group of the chain that skips J's
    // pivot columns; it fixes J's rows and the cleared zeros.
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < m; ++c)
        if (std::find(weights.begin(), weights.end(), c + 1) == weights.end()) rest.push_back(c);
    acc = tm_reduce_rows(work, off, m, 0, s1, rest, std::move(acc));
    return {std::move(acc), std::move(weights)};
}

inline std::size_t row_weight(const Matrix& m, std::size_t r) { return nrt_weight_chain(m.row(r)); }

inline bool is_canonical_row(std::span<const Elem> v) {
    std::size_t ones = 0;
    for (auto x : v) {
        if (x == 0) continue;
        if (x != 1) return false;
        ++ones;
    }
    return ones == 1;
}

inline bool column_is_zero(const Matrix& m, std::size_t c, std::size_t row_begin, std::size_t row_end) {
    for (std::size_t r = row_begin; r < row_end; ++r)
        if (m(r, c) != 0) return false;
    return true;
}

inline std::size_t trailing_zero_rows(const Matrix& m) {
    std::size_t z = 0;
    while (z < m.rows() && m.row_is_zero(m.rows() - 1 - z)) ++z;
    return z;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Predicates

/// S has the form [[I_s1, *], [0, invertible]].
inline bool is_admissible(const Matrix& s, const BlockSplit& split) {
    const std::size_t k = split.rows();
    if (s.rows() != k || s.cols() != k) return false;
    for (std::size_t i = 0; i < split.s1; ++i)
        for (std::size_t j = 0; j < split.s1; ++j)
            if (s(i, j) != (i == j ? 1u : 0u)) return false;
    for (std::size_t i = split.s1; i < k; ++i)
        for (std::size_t j = 0; j < split.s1; ++j)
            if (s(i, j) != 0) return false;
    return is_invertible(s.submatrix(split.s1, split.s1, split.s2, split.s2));
}

/// Row order (order[pos] = original row) exhibiting the Tm-reduced column
/// shape, or nullopt when no row permutation does.
///
/// A nonzero column can take its pivot at any row holding a 1 outside the
/// union of the supports of the earlier nonzero columns, so a left-to-right
/// greedy pass decides the question.
inline std::optional<std::vector<std::size_t>> tm_reduced_row_order(const Matrix& m) {
    const std::size_t k = m.rows();
    std::vector<bool> used(k, false);
    std::vector<std::size_t> order;
    order.reserve(k);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (detail::column_is_zero(m, c, 0, k)) continue;
        std::size_t pivot = k;
        for (std::size_t r = 0; r < k && pivot == k; ++r)
            if (!used[r] && m(r, c) == 1) pivot = r;
        if (pivot == k) return std::nullopt;
        for (std::size_t r = 0; r < k; ++r)
            if (m(r, c) != 0 && !used[r] && r != pivot) {
                order.push_back(r);
                used[r] = true;
            }
        order.push_back(pivot);
        used[pivot] = true;
    }
    for (std::size_t r = 0; r < k; ++r)
        if (!used[r]) order.push_back(r);
    return order;
}

inline bool is_tm_reduced(const Matrix& m) { return tm_reduced_row_order(m).has_value(); }

namespace detail {

// Checks the [[A, B], [J, 0]] shape of a block split after s1 rows. Returns a
// description of the first violated condition, or nullopt.
inline std::optional<std::string> split_shape_issue(const Matrix& block, std::size_t s1, bool zero_rows_last) {
    const std::size_t k = block.rows();
    const std::size_t m = block.cols();
    if (s1 >= k) return "no rows below the protected rows";
    std::size_t last_weight = 0;
    bool seen_zero = false;
    std::vector<std::size_t> pivots;
    for (std::size_t r = s1; r < k; ++r) {
        if (block.row_is_zero(r)) {
            seen_zero = true;
            continue;
        }
        if (zero_rows_last && seen_zero) return "zero row above a nonzero row of J";
        if (!is_canonical_row(block.row(r))) return "row " + std::to_string(r + 1) + " of J is not a canonical vector";
        const std::size_t w = row_weight(block, r);
        if (w <= last_weight) return "rows of J are not in increasing weight order";
        last_weight = w;
        pivots.push_back(w);
    }
    if (pivots.empty()) return "J is zero";
    const std::size_t width = last_weight;
    for (auto w : pivots)
        if (!column_is_zero(block, w - 1, 0, s1))
            return "A has a nonzero entry above the pivot of J in column " + std::to_string(w);
    if (!is_tm_reduced(block.submatrix(0, 0, s1, width))) return "A is not Tm-reduced";
    if (!is_tm_reduced(block.submatrix(0, width, s1, m - width))) return "B is not Tm-reduced";
    return std::nullopt;
}

}  // namespace detail

/// Output shape of block_reduce: Tm-reduced with zero bottom rows when the
/// bottom rows were zero, otherwise [[A, B], [J, 0]] with zero rows of J last.
inline bool has_block_reduced_shape(const Matrix& m, const BlockSplit& split) {
    if (m.rows() != split.rows()) return false;
    bool bottom_zero = true;
    for (std::size_t r = split.s1; r < m.rows(); ++r) bottom_zero = bottom_zero && m.row_is_zero(r);
    if (bottom_zero) return is_tm_reduced(m);
    return !detail::split_shape_issue(m, split.s1, true).has_value();
}

struct BlockCheck {
    enum class Kind { canonical, tm_reduced, split, failed };
    Kind kind = Kind::failed;
    std::size_t s1 = 0;  // protected rows used for the split form
    std::string detail;

    bool ok() const noexcept { return kind != Kind::failed; }
};

/// Per-condition outcome of the NRT-triangular form check.
struct TriangularReport {
    std::vector<std::size_t> trailing_zeros;  // z_1 .. z_n
    bool block_echelon = true;
    std::vector<BlockCheck> blocks;

    bool ok() const {
        return block_echelon && std::all_of(blocks.begin(), blocks.end(), [](const BlockCheck& b) { return b.ok(); });
    }
};

inline TriangularReport check_nrt_triangular(const Matrix& g, const CodeSpace& space) {
    if (g.cols() != space.length())
        throw Error(Errc::dimension_mismatch, "matrix " + g.shape_string() + " in a space of length " +
                                                  std::to_string(space.length()));
    const std::size_t k = g.rows(), m = space.m;
    TriangularReport report;
    for (std::size_t j = 0; j < space.n; ++j) {
        const Matrix block = g.submatrix(0, j * m, k, m);
        report.trailing_zeros.push_back(detail::trailing_zero_rows(block));
        BlockCheck check;
        if (j == 0) {
            check.kind = BlockCheck::Kind::canonical;
            std::size_t last = 0;
            bool seen_zero = false;
            for (std::size_t r = 0; r < k && check.ok(); ++r) {
                if (block.row_is_zero(r)) {
                    seen_zero = true;
                    continue;
                }
                const std::size_t w = detail::row_weight(block, r);
                if (seen_zero) {
                    check = {BlockCheck::Kind::failed, 0, "nonzero row " + std::to_string(r + 1) + " below a zero row"};
                } else if (!detail::is_canonical_row(block.row(r))) {
                    check = {BlockCheck::Kind::failed, 0, "row " + std::to_string(r + 1) + " is not a canonical vector"};
                } else if (w <= last) {
                    check = {BlockCheck::Kind::failed, 0, "rows are not in increasing weight order"};
                }
                last = w;
            }
        } else if (is_tm_reduced(block)) {
            check.kind = BlockCheck::Kind::tm_reduced;
        } else {
            const std::size_t s1 = k - report.trailing_zeros[j - 1];
            const auto issue = detail::split_shape_issue(block, s1, false);
            check.s1 = s1;
            if (issue) {
                check.kind = BlockCheck::Kind::failed;
                check.detail = "not Tm-reduced, and split after row " + std::to_string(s1) + ": " + *issue;
            } else {
                check.kind = BlockCheck::Kind::split;
            }
        }
        report.blocks.push_back(std::move(check));
    }
    for (std::size_t j = 1; j < space.n; ++j)
        if (report.trailing_zeros[j] > report.trailing_zeros[j - 1]) report.block_echelon = false;
    return report;
}

inline bool is_nrt_triangular(const Matrix& g, const CodeSpace& space) { return check_nrt_triangular(g, space).ok(); }

// ---------------------------------------------------------------------------
// Reductions

/// M0 = M T^t Tm-reduced.
inline TmReduction tm_reduce(const Matrix& m) {
    Matrix work = m;
    std::vector<std::size_t> all(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) all[c] = c;
    auto t = detail::tm_reduce_rows(work, 0, m.cols(), 0, m.rows(), all,
                                    UpperTriangular::identity(m.field(), m.cols()));
    return {std::move(work), std::move(t)};
}

/// Reduction of one block under E(s1, s2) x T_m.
inline BlockReduction block_reduce(const Matrix& m, const BlockSplit& split) {
    if (split.rows() != m.rows())
        throw Error(Errc::dimension_mismatch, "split of " + std::to_string(split.rows()) + " rows for a " +
                                                  m.shape_string() + " matrix");
    const Field& f = m.field();
    Matrix work = m;
    Matrix s = Matrix::identity(f, m.rows());
    detail::RowOps ops(work, s);
    auto step = detail::reduce_block(work, 0, m.cols(), split.s1, ops);
    const CodeSpace space(f, m.cols(), 1);
    BlockReduction out{std::move(work),
                       ReductionWitness{std::move(s), Isometry(space, {0}, {std::move(step.transform)})},
                       step.weights.size(), step.weights.empty() ? 0 : step.weights.back()};
    return out;
}

/// Standard form of a code over a single chain: rows e_{i_1}, .., e_{i_r}
/// (i_1 < .. < i_r the nonzero weights of the code) followed by zero rows.
inline OneChainForm one_chain_standard_form(const Matrix& m, const CodeSpace& space) {
    if (space.n != 1) throw Error(Errc::space_mismatch, "one-chain standard form needs a single chain");
    if (m.cols() != space.m)
        throw Error(Errc::dimension_mismatch, "matrix " + m.shape_string() + " over a chain of length " +
                                                  std::to_string(space.m));
    auto red = block_reduce(m, BlockSplit::protect(0, m.rows()));
    std::vector<std::size_t> weights;
    for (std::size_t r = 0; r < red.reduced.rows(); ++r)
        if (!red.reduced.row_is_zero(r)) weights.push_back(detail::row_weight(red.reduced, r));
    return {std::move(red.reduced), std::move(red.witness), std::move(weights)};
}

inline OneChainForm one_chain_standard_form(const Matrix& m) {
    return one_chain_standard_form(m, CodeSpace(m.field(), m.cols(), 1));
}

/// Equivalent generator matrix in NRT-triangular form, processing blocks in
/// order of minimum rank of their unprotected rows. Ties go to the block of
/// smaller total rank, then to the lowest index.
inline TriangularForm nrt_triangular_form(const Matrix& g, const CodeSpace& space, bool record_steps = false) {
    if (g.cols() != space.length())
        throw Error(Errc::dimension_mismatch, "matrix " + g.shape_string() + " in a space of length " +
                                                  std::to_string(space.length()));
    if (!(g.field() == space.field)) throw Error(Errc::field_mismatch, "matrix over " + g.field().name());
    const Field& f = g.field();
    const std::size_t k = g.rows(), m = space.m, n = space.n;

    Matrix work = g;
    Matrix s = Matrix::identity(f, k);
    std::vector<std::size_t> remaining(n);
    for (std::size_t j = 0; j < n; ++j) remaining[j] = j;
    std::vector<std::size_t> order;
    std::vector<std::optional<UpperTriangular>> transforms(n);
    std::vector<ReductionStep> steps;
    std::size_t s1 = 0;

    for (std::size_t pos = 0; pos < n; ++pos) {
        auto best = remaining.begin();
        if (s1 < k && remaining.size() > 1) {
            // (rank of the free rows, rank of the whole block), lexicographically
            std::pair<std::size_t, std::size_t> best_key{k + 1, k + 1};
            for (auto it = remaining.begin(); it != remaining.end(); ++it) {
                const std::pair key{rank(work.submatrix(s1, *it * m, k - s1, m)), rank(work.submatrix(0, *it * m, k, m))};
                if (key < best_key) {
                    best_key = key;
                    best = it;
                }
            }
        }
        const std::size_t block = *best;
        remaining.erase(best);
        order.push_back(block);

        std::optional<Matrix> step_s;
        if (record_steps) step_s = Matrix::identity(f, k);
        detail::RowOps ops(work, s, step_s ? &*step_s : nullptr);
        auto step = detail::reduce_block(work, block * m, m, s1, ops);
        transforms[block] = std::move(step.transform);
        steps.push_back({block, pos, s1, step.weights.size(), std::move(step_s)});
        s1 += step.weights.size();
    }

    Matrix out(f, k, g.cols());
    std::vector<std::size_t> perm(n);
    std::vector<UpperTriangular> blocks;
    blocks.reserve(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t block = order[pos];
        perm[block] = pos;
        blocks.push_back(*transforms[block]);
        for (std::size_t r = 0; r < k; ++r) {
            const auto src = work.row(r).subspan(block * m, m);
            std::copy(src.begin(), src.end(), out.row_mut(r).begin() + pos * m);
        }
    }
    return {std::move(out), ReductionWitness{std::move(s), Isometry(space, std::move(perm), std::move(blocks))},
            std::move(steps)};
}

}  // namespace nrt
