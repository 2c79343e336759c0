#pragma once

// Bounded brute force over the codewords of a linear code, plus witness
// verification. Enumeration runs over a row basis, so dependent generator
// rows never double count, and refuses codes with more than 2^24 codewords.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nrt/error.hpp"
#include "nrt/matrix.hpp"
#include "nrt/metric.hpp"
#include "nrt/reduction.hpp"
#include "nrt/symmetry.hpp"

namespace nrt {

inline constexpr std::uint64_t max_codewords = std::uint64_t{1} << 24;

struct WeightDistribution {
    std::map<std::size_t, std::uint64_t> counts;  // total NRT weight -> number of codewords
    std::uint64_t size = 0;                        // q^rank

    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// q^rank, saturated to UINT64_MAX once it passes the enumeration limit.
inline std::uint64_t code_size(std::uint32_t q, std::size_t rank) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        size *= q;
        if (size > max_codewords) return UINT64_MAX;
    }
    return size;
}

/// Calls visit(codeword) once for every element of the row space of g.
inline void for_each_codeword(const Matrix& g, const CodeSpace& space,
                              const std::function<void(std::span<const Elem>)>& visit) {
    if (g.cols() != space.length())
        throw Error(Errc::dimension_mismatch, "matrix " + g.shape_string() + " in a space of length " +
                                                  std::to_string(space.length()));
    const Field& f = g.field();
    const auto red = rref(g);
    const std::size_t r = red.rank;
    const std::uint32_t q = f.order();
    if (code_size(q, r) > max_codewords)
        throw Error(Errc::too_large, "code has " + std::to_string(q) + "^" + std::to_string(r) +
                                         " codewords, more than the 2^24 enumeration limit");

    // Odometer over coefficient vectors; bumping digit d from a to a+1 adds
    // (a+1 - a) * basis_d, and wrapping from q-1 to 0 adds (0 - (q-1)) * basis_d.
    std::vector<Elem> step(q);
    for (Elem a = 0; a < q; ++a) step[a] = f.sub((a + 1) % q, a);
    std::vector<Elem> digits(r, 0);
    std::vector<Elem> word(g.cols(), 0);
    while (true) {
        visit(word);
        std::size_t d = 0;
        for (; d < r; ++d) {
            f.axpy(word, step[digits[d]], red.reduced.row(d));
            digits[d] = (digits[d] + 1) % q;
            if (digits[d] != 0) break;
        }
        if (d == r) break;
    }
}

inline std::vector<Matrix> enumerate_codewords(const Matrix& g, const CodeSpace& space) {
    std::vector<Matrix> out;
    for_each_codeword(g, space, [&](std::span<const Elem> w) {
        out.emplace_back(g.field(), 1, w.size(), std::vector<Elem>(w.begin(), w.end()));
    });
    return out;
}

inline WeightDistribution weight_distribution(const Matrix& g, const CodeSpace& space) {
    WeightDistribution out;
    for_each_codeword(g, space, [&](std::span<const Elem> w) {
        ++out.counts[nrt_weight(w, space).total];
        ++out.size;
    });
    return out;
}

inline std::size_t min_distance(const Matrix& g, const CodeSpace& space) {
    if (rank(g) == 0) throw Error(Errc::zero_code, "the zero code has no minimum distance");
    const auto dist = weight_distribution(g, space);
    for (const auto& [w, count] : dist.counts)
        if (w > 0 && count > 0) return w;
    throw Error(Errc::zero_code, "the zero code has no minimum distance");  // unreachable
}

/// Checks out == S * apply_isometry(iso, in) with S invertible, and that both
/// sides span the same row space.
inline bool verify_witness(const Matrix& in, const Matrix& out, const ReductionWitness& w) {
    const CodeSpace& space = w.space();
    const std::size_t k = in.rows();
    if (in.cols() != space.length() || out.cols() != space.length() || out.rows() != k ||
        w.row_transform.rows() != k || w.row_transform.cols() != k)
        throw Error(Errc::dimension_mismatch, "witness shapes do not match the matrices");
    if (!(in.field() == space.field) || !(out.field() == space.field) || !(w.row_transform.field() == space.field))
        return false;
    if (!is_invertible(w.row_transform)) return false;
    const Matrix moved = apply_isometry(w.iso, in);
    if (!(mat_mul(w.row_transform, moved) == out)) return false;
    return rref(out).reduced == rref(moved).reduced;
}

/// Every chain meets the support of some generator row.
inline bool is_nondegenerate(const Matrix& g, const CodeSpace& space) {
    if (g.cols() != space.length()) return false;
    for (std::size_t j = 0; j < space.n; ++j) {
        bool touched = false;
        for (std::size_t r = 0; r < g.rows() && !touched; ++r)
            for (std::size_t c = j * space.m; c < (j + 1) * space.m; ++c)
                if (g(r, c) != 0) {
                    touched = true;
                    break;
                }
        if (!touched) return false;
    }
    return true;
}

}  // namespace nrt
