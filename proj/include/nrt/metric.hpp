#pragma once

/*
 * The NRT weight on F_q^{m n}, seen as n consecutive blocks of length m.
 * Coordinates (j-1)m+1 .. jm form block j; position i inside a block is
 * level i of chain j. The weight of a block is the largest 1-based index of a
 * nonzero coordinate, and the weight of a vector is the sum over its blocks.
 */

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nrt/error.hpp"
#include "nrt/field.hpp"
#include "nrt/matrix.hpp"

namespace nrt {

/// The ambient space: n disjoint chains of length m over GF(q).
struct CodeSpace {
    Field field;
    std::size_t m = 1;
    std::size_t n = 1;

    CodeSpace() = default;
    CodeSpace(Field f, std::size_t chain_length, std::size_t chain_count)
        : field(std::move(f)), m(chain_length), n(chain_count) {
        if (m < 1 || n < 1) throw Error(Errc::invalid_argument, "chain length and chain count must be at least 1");
    }

    std::size_t length() const noexcept { return m * n; }

    std::string describe() const {
        return field.name() + ", " + std::to_string(n) + " chain(s) of length " + std::to_string(m);
    }

    friend bool operator==(const CodeSpace& a, const CodeSpace& b) {
        return a.field == b.field && a.m == b.m && a.n == b.n;
    }
};

struct WeightProfile {
    std::vector<std::size_t> blocks;
    std::size_t total = 0;

    friend bool operator==(const WeightProfile&, const WeightProfile&) = default;
};

inline std::size_t nrt_weight_chain(std::span<const Elem> v) {
    for (std::size_t i = v.size(); i > 0; --i)
        if (v[i - 1] != 0) return i;
    return 0;
}

inline std::size_t nrt_weight_chain(const Matrix& v) {
    if (v.rows() != 1) throw Error(Errc::dimension_mismatch, "expected a row vector, got " + v.shape_string());
    return nrt_weight_chain(v.row(0));
}

inline WeightProfile nrt_weight(std::span<const Elem> v, const CodeSpace& space) {
    if (v.size() != space.length())
        throw Error(Errc::dimension_mismatch, "vector of length " + std::to_string(v.size()) +
                                                  " in a space of length " + std::to_string(space.length()));
    WeightProfile out;
    out.blocks.reserve(space.n);
    for (std::size_t j = 0; j < space.n; ++j) {
        const std::size_t w = nrt_weight_chain(v.subspan(j * space.m, space.m));
        out.blocks.push_back(w);
        out.total += w;
    }
    return out;
}

inline WeightProfile nrt_weight(const Matrix& v, const CodeSpace& space) {
    if (v.rows() != 1) throw Error(Errc::dimension_mismatch, "expected a row vector, got " + v.shape_string());
    return nrt_weight(v.row(0), space);
}

inline std::size_t nrt_distance(const Matrix& u, const Matrix& v, const CodeSpace& space) {
    if (u.rows() != 1 || v.rows() != 1 || u.cols() != v.cols())
        throw Error(Errc::dimension_mismatch, "distance between " + u.shape_string() + " and " + v.shape_string());
    require_same_field(u, v);
    const Field& f = u.field();
    std::vector<Elem> diff(u.cols());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = f.sub(u(0, i), v(0, i));
    return nrt_weight(std::span<const Elem>(diff), space).total;
}

/// Weight as the size of the poset ideal generated by the support. Independent of nrt_weight.
inline std::size_t ideal_weight(const Matrix& v, const CodeSpace& space) {
    if (v.rows() != 1 || v.cols() != space.length())
        throw Error(Errc::dimension_mismatch, "vector " + v.shape_string() + " in a space of length " +
                                                  std::to_string(space.length()));
    // Poset points are (level, chain), both 1-based; (i, j) <= (i', j) iff i <= i'.
    std::set<std::pair<std::size_t, std::size_t>> support;
    for (std::size_t c = 0; c < v.cols(); ++c)
        if (v(0, c) != 0) support.emplace(c % space.m + 1, c / space.m + 1);
    std::set<std::pair<std::size_t, std::size_t>> ideal;
    for (const auto& [level, chain] : support)
        for (std::size_t below = 1; below <= level; ++below) ideal.emplace(below, chain);
    return ideal.size();
}

}  // namespace nrt
