#pragma once

/*
 * Linear isometries of the NRT space: the group (T_m)^n x| S_n.
 *
 * An Isometry (pi, T_1..T_n) sends v = (v_1 | ... | v_n) to the vector whose
 * block j is T_j * v_{pi^-1(j)}: blocks are moved by pi, then each block is
 * multiplied, as a column vector, by the triangular matrix of its new
 * position. On a generator matrix this acts on every row, i.e. block j of
 * the result is M_{pi^-1(j)} * T_j^t.
 *
 * Block indices in this API are 0-based; the JSON encoding is 1-based.
 */

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nrt/error.hpp"
#include "nrt/matrix.hpp"
#include "nrt/metric.hpp"

namespace nrt {

class Isometry {
public:
    Isometry(CodeSpace space, std::vector<std::size_t> perm, std::vector<UpperTriangular> blocks)
        : space_(std::move(space)), perm_(std::move(perm)), blocks_(std::move(blocks)) {
        if (perm_.size() != space_.n || blocks_.size() != space_.n)
            throw Error(Errc::dimension_mismatch, "isometry needs one image and one triangular block per chain");
        std::vector<bool> seen(space_.n, false);
        for (auto img : perm_) {
            if (img >= space_.n || seen[img]) throw Error(Errc::invalid_argument, "perm is not a permutation");
            seen[img] = true;
        }
        for (const auto& t : blocks_) {
            if (t.size() != space_.m) throw Error(Errc::dimension_mismatch, "triangular block has the wrong size");
            if (!(t.field() == space_.field)) throw Error(Errc::field_mismatch, "triangular block over another field");
        }
        preimage_.assign(space_.n, 0);
        for (std::size_t j = 0; j < space_.n; ++j) preimage_[perm_[j]] = j;
    }

    static Isometry identity(const CodeSpace& space) {
        std::vector<std::size_t> perm(space.n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        return Isometry(space, std::move(perm),
                        std::vector<UpperTriangular>(space.n, UpperTriangular::identity(space.field, space.m)));
    }

    static Isometry permutation(const CodeSpace& space, std::vector<std::size_t> perm) {
        return Isometry(space, std::move(perm),
                        std::vector<UpperTriangular>(space.n, UpperTriangular::identity(space.field, space.m)));
    }

    const CodeSpace& space() const noexcept { return space_; }
    /// perm()[j] is the position block j moves to.
    const std::vector<std::size_t>& perm() const noexcept { return perm_; }
    /// The block that lands in position j.
    std::size_t preimage(std::size_t j) const { return preimage_[j]; }
    /// blocks()[j] multiplies the block sitting at position j after the move.
    const std::vector<UpperTriangular>& blocks() const noexcept { return blocks_; }

    friend bool operator==(const Isometry& a, const Isometry& b) {
        return a.space_ == b.space_ && a.perm_ == b.perm_ && a.blocks_ == b.blocks_;
    }

private:
    CodeSpace space_;
    std::vector<std::size_t> perm_;
    std::vector<std::size_t> preimage_;
    std::vector<UpperTriangular> blocks_;
};

/// Applies iso to every row of v (v has m*n columns).
inline Matrix apply_isometry(const Isometry& iso, const Matrix& v) {
    const CodeSpace& space = iso.space();
    if (v.cols() != space.length())
        throw Error(Errc::dimension_mismatch, "matrix " + v.shape_string() + " in a space of length " +
                                                  std::to_string(space.length()));
    if (!(v.field() == space.field)) throw Error(Errc::field_mismatch, "matrix over " + v.field().name());
    const std::size_t m = space.m;
    Matrix out(space.field, v.rows(), v.cols());
    for (std::size_t r = 0; r < v.rows(); ++r) {
        const auto src = v.row(r);
        auto dst = out.row_mut(r);
        for (std::size_t j = 0; j < space.n; ++j) {
            const auto image = iso.blocks()[j].apply(src.subspan(iso.preimage(j) * m, m));
            std::copy(image.begin(), image.end(), dst.begin() + j * m);
        }
    }
    return out;
}

/// The isometry acting as a after b.
inline Isometry compose(const Isometry& a, const Isometry& b) {
    if (!(a.space() == b.space())) throw Error(Errc::space_mismatch, "composing isometries of different spaces");
    const std::size_t n = a.space().n;
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = a.perm()[b.perm()[j]];
    std::vector<UpperTriangular> blocks;
    blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) blocks.push_back(a.blocks()[i] * b.blocks()[a.preimage(i)]);
    return Isometry(a.space(), std::move(perm), std::move(blocks));
}

inline Isometry invert(const Isometry& a) {
    const std::size_t n = a.space().n;
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = a.preimage(j);
    std::vector<UpperTriangular> blocks;
    blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) blocks.push_back(a.blocks()[a.perm()[i]].inverse());
    return Isometry(a.space(), std::move(perm), std::move(blocks));
}

/// T in T_m with T v = e_r, r = weight of v. Row r of T scales by v_r^-1 and
/// rows 1..r-1 subtract the matching multiple of coordinate r.
inline UpperTriangular map_to_canonical(std::span<const Elem> v, const Field& field) {
    const std::size_t r = nrt_weight_chain(v);
    if (r == 0) throw Error(Errc::zero_vector, "the zero vector has no canonical image");
    const Elem pivot_inv = field.inv(v[r - 1]);
    UpperTriangularBuilder b(field, v.size());
    b.set(r - 1, r - 1, pivot_inv);
    for (std::size_t i = 0; i + 1 < r; ++i) b.set(i, r - 1, field.neg(field.mul(v[i], pivot_inv)));
    return std::move(b).build();
}

inline UpperTriangular map_to_canonical(const Matrix& v) {
    if (v.rows() != 1) throw Error(Errc::dimension_mismatch, "expected a row vector, got " + v.shape_string());
    return map_to_canonical(v.row(0), v.field());
}

/// True iff column j (1-based) of T is e_j, i.e. T fixes e_j.
inline bool stabilizes_canonical(const UpperTriangular& t, std::size_t j) {
    if (j < 1 || j > t.size()) return false;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t(i, j - 1) != (i == j - 1 ? 1u : 0u)) return false;
    return true;
}

inline Isometry random_isometry(const CodeSpace& space, Rng& rng) {
    std::vector<std::size_t> perm(space.n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    // Fisher-Yates with an explicit draw so the sequence does not depend on std::shuffle.
    for (std::size_t i = space.n; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(perm[i - 1], perm[pick(rng)]);
    }
    std::vector<UpperTriangular> blocks;
    blocks.reserve(space.n);
    for (std::size_t j = 0; j < space.n; ++j) blocks.push_back(random_upper_triangular(space.field, space.m, rng));
    return Isometry(space, std::move(perm), std::move(blocks));
}

inline Isometry random_isometry(const CodeSpace& space, std::uint64_t seed) {
    Rng rng(seed);
    return random_isometry(space, rng);
}

}  // namespace nrt
