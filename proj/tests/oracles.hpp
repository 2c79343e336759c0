#pragma once

// Brute-force reference computations for the test suites. Nothing here calls
// into the reduction code: each helper recomputes its answer from definitions.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "nrt/field.hpp"
#include "nrt/matrix.hpp"
#include "nrt/metric.hpp"

namespace nrt::oracle {

/// Polynomial product of two encoded elements modulo the field's modulus,
/// done with schoolbook arithmetic on base-p digits.
inline Elem poly_mul(const Field& f, Elem a, Elem b) {
    const std::uint32_t p = f.characteristic(), e = f.degree();
    const auto mod = f.modulus();
    std::vector<std::uint64_t> x(e), y(e), prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i, a /= p, b /= p) {
        x[i] = a % p;
        y[i] = b % p;
    }
    for (std::uint32_t i = 0; i < e; ++i)
        for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (std::size_t d = 2 * e - 1; d >= e; --d) {
        const std::uint64_t c = prod[d];
        if (c == 0) continue;
        // x^e = -(mod_0 + .. + mod_{e-1} x^{e-1})
        prod[d] = 0;
        for (std::uint32_t i = 0; i < e; ++i) prod[d - e + i] = (prod[d - e + i] + (p - mod[i]) % p * c) % p;
    }
    Elem out = 0, place = 1;
    for (std::uint32_t i = 0; i < e; ++i, place *= p) out += static_cast<Elem>(prod[i]) * place;
    return out;
}

inline std::vector<std::uint32_t> prime_powers_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 2; q <= limit; ++q) {
        std::uint32_t p = 2;
        while (q % p) ++p;
        std::uint32_t r = q;
        while (r % p == 0) r /= p;
        if (r == 1) out.push_back(q);
    }
    return out;
}

/// Largest 1-based nonzero index of a block, by direct definition.
inline std::size_t chain_weight(const std::vector<Elem>& v) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) w = i + 1;
    return w;
}

/// All linear combinations of the rows of g (with repetitions collapsed).
inline std::set<std::vector<Elem>> row_space(const Matrix& g) {
    const Field& f = g.field();
    std::set<std::vector<Elem>> words{std::vector<Elem>(g.cols(), 0)};
    for (std::size_t r = 0; r < g.rows(); ++r) {
        std::set<std::vector<Elem>> next;
        for (const auto& w : words)
            for (Elem c = 0; c < f.order(); ++c) {
                auto x = w;
                for (std::size_t j = 0; j < x.size(); ++j) x[j] = f.add(x[j], f.mul(c, g(r, j)));
                next.insert(std::move(x));
            }
        words = std::move(next);
    }
    return words;
}

/// {weight(c) : c in rowspace, c != 0} over a single chain.
inline std::vector<std::size_t> attained_chain_weights(const Matrix& g) {
    std::set<std::size_t> out;
    for (const auto& w : row_space(g))
        if (auto wt = chain_weight(w); wt > 0) out.insert(wt);
    return {out.begin(), out.end()};
}

/// Total NRT weight distribution by enumerating the row space.
inline std::vector<std::uint64_t> nrt_distribution(const Matrix& g, std::size_t m, std::size_t n) {
    std::vector<std::uint64_t> counts(m * n + 1, 0);
    for (const auto& w : row_space(g)) {
        std::size_t total = 0;
        for (std::size_t j = 0; j < n; ++j) total += chain_weight(std::vector<Elem>(w.begin() + j * m, w.begin() + (j + 1) * m));
        ++counts[total];
    }
    return counts;
}

inline std::vector<std::uint64_t> hamming_distribution(const Matrix& g) {
    std::vector<std::uint64_t> counts(g.cols() + 1, 0);
    for (const auto& w : row_space(g))
        ++counts[std::count_if(w.begin(), w.end(), [](Elem x) { return x != 0; })];
    return counts;
}

/// Literal Tm-reduced test: some row order makes every nonzero column end in a
/// 1 with zeros below it, with pivots strictly increasing left to right.
inline bool tm_reduced_by_permutation(const Matrix& m) {
    std::vector<std::size_t> perm(m.rows());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        bool good = true;
        std::size_t last_pivot = 0;  // 1-based, 0 = none yet
        for (std::size_t c = 0; c < m.cols() && good; ++c) {
            std::size_t pivot = 0;
            for (std::size_t pos = 0; pos < perm.size(); ++pos)
                if (m(perm[pos], c) != 0) pivot = pos + 1;
            if (pivot == 0) continue;
            if (m(perm[pivot - 1], c) != 1 || pivot <= last_pivot) good = false;
            last_pivot = pivot;
        }
        if (good) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Random matrix whose rows are sparse-ish, to reach structured cases that
/// uniform sampling rarely produces (zero rows, equal weights, repeated rows).
inline Matrix structured_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<Elem> any(0, f.order() - 1);
    Matrix out(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const int mode = coin(rng);
        if (mode == 0) continue;  // zero row
        if (mode == 1 && r > 0) {  // copy of an earlier row
            std::uniform_int_distribution<std::size_t> pick(0, r - 1);
            const auto src = pick(rng);
            for (std::size_t c = 0; c < cols; ++c) out.set(r, c, out(src, c));
            continue;
        }
        for (std::size_t c = 0; c < cols; ++c) out.set(r, c, coin(rng) == 0 ? any(rng) : (mode == 2 ? 0 : any(rng)));
    }
    return out;
}

}  // namespace nrt::oracle
