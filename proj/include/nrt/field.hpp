#pragma once

/*
 * Exact arithmetic in GF(q), q = p^e <= 65536.
 *
 * Elements are encoded as integers in [0, q). For e > 1 the base-p digits of
 * the integer are the coefficients of a polynomial over GF(p) reduced modulo
 * the field's modulus, least significant digit = constant term. The modulus is
 * the first monic irreducible polynomial of degree e in the scan that runs the
 * constant coefficient fastest, so the encoding is reproducible everywhere.
 *
 * Prime fields use modular arithmetic directly; extension fields multiply
 * through discrete-log tables built from the smallest primitive element.
 */

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nrt/error.hpp"

namespace nrt {

using Elem = std::uint32_t;

inline constexpr std::uint32_t max_field_order = 65536;

namespace detail {

struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
};

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Decomposes q as p^e, throwing for anything that is not a prime power.
inline PrimePower decompose_order(std::uint64_t q) {
    if (q > max_field_order)
        throw Error(Errc::too_large, "field order " + std::to_string(q) + " exceeds 65536");
    if (q < 2) throw Error(Errc::not_prime_power, "field order " + std::to_string(q) + " is not a prime power");
    const auto factors = prime_factors(static_cast<std::uint32_t>(q));
    if (factors.size() != 1)
        throw Error(Errc::not_prime_power, "field order " + std::to_string(q) + " is not a prime power");
    PrimePower pp{factors.front(), 0};
    for (std::uint64_t r = q; r > 1; r /= pp.p) ++pp.e;
    return pp;
}

// Polynomials over GF(p) as coefficient vectors, constant term first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime, so a^(p-2) is the inverse.
    std::uint64_t result = 1, base = a % p;
    for (std::uint32_t ex = p - 2; ex > 0; ex >>= 1) {
        if (ex & 1u) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo a nonzero b over GF(p).
inline Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
    poly_trim(a);
    poly_trim(b);
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = std::uint64_t(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        poly_trim(a);
    }
    return a;
}

inline Poly poly_from_index(std::uint32_t index, std::uint32_t p, std::uint32_t digits) {
    Poly out(digits);
    for (auto& c : out) {
        c = index % p;
        index /= p;
    }
    return out;
}

inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::uint32_t degree = static_cast<std::uint32_t>(f.size() - 1);
    std::uint32_t count = 1;
    for (std::uint32_t d = 1; 2 * d <= degree; ++d) {
        count *= p;
        for (std::uint32_t idx = 0; idx < count; ++idx) {
            Poly g = poly_from_index(idx, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

/// First monic irreducible of degree e, constant coefficient varying fastest.
inline Poly find_modulus(std::uint32_t p, std::uint32_t e) {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < e; ++i) count *= p;
    for (std::uint32_t idx = 0; idx < count; ++idx) {
        Poly f = poly_from_index(idx, p, e);
        f.push_back(1);
        if (f[0] == 0) continue;
        if (is_irreducible(f, p)) return f;
    }
    throw Error(Errc::invalid_argument, "no irreducible polynomial found");  // unreachable for valid p, e
}

}  // namespace detail

/// A finite field GF(q). Cheap to copy: the log tables are shared.
class Field {
public:
    static Field create(std::uint64_t q) {
        const auto pp = detail::decompose_order(q);
        Field f;
        f.q_ = static_cast<std::uint32_t>(q);
        f.p_ = pp.p;
        f.e_ = pp.e;
        if (pp.e > 1) f.tables_ = build_tables(f.q_, pp.p, pp.e);
        return f;
    }

    std::uint32_t order() const noexcept { return q_; }
    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return e_; }
    bool is_prime_field() const noexcept { return e_ == 1; }

    /// Monic modulus, constant term first (length e + 1). Empty for prime fields.
    std::vector<std::uint32_t> modulus() const { return tables_ ? tables_->modulus : std::vector<std::uint32_t>{}; }

    /// The primitive element the log tables are built on (extension fields only).
    Elem generator() const { return tables_ ? tables_->generator : 0; }

    bool contains(std::uint64_t a) const noexcept { return a < q_; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        if (e_ == 1) {
            const Elem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return digitwise(a, b, [this](std::uint32_t x, std::uint32_t y) { return (x + y) % p_; });
    }

    Elem neg(Elem a) const {
        if (p_ == 2 || a == 0) return a;
        if (e_ == 1) return p_ - a;
        return digitwise(a, 0, [this](std::uint32_t x, std::uint32_t) { return (p_ - x) % p_; });
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (q_ == 2) return 1;
        if (e_ == 1) return static_cast<Elem>(std::uint64_t(a) * b % p_);
        const auto& t = *tables_;
        return t.exp[t.log[a] + t.log[b]];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw Error(Errc::division_by_zero, "inverse of zero");
        if (e_ == 1) return detail::inv_mod(a, p_);
        const auto& t = *tables_;
        return t.exp[(q_ - 1 - t.log[a]) % (q_ - 1)];
    }

    Elem div(Elem a, Elem b) const {
        if (b == 0) throw Error(Errc::division_by_zero, "division by zero");
        return mul(a, inv(b));
    }

    Elem pow(Elem a, std::uint64_t n) const {
        Elem result = 1;
        for (; n > 0; n >>= 1) {
            if (n & 1u) result = mul(result, a);
            a = mul(a, a);
        }
        return result;
    }

    /// dst += c * src, entrywise. The hot loop of every elimination.
    void axpy(std::span<Elem> dst, Elem c, std::span<const Elem> src) const {
        if (c == 0) return;
        if (p_ == 2 && c == 1) {
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
            return;
        }
        for (std::size_t i = 0; i < dst.size(); ++i)
            if (src[i] != 0) dst[i] = add(dst[i], mul(c, src[i]));
    }

    void scale(std::span<Elem> v, Elem c) const {
        if (c == 1) return;
        for (auto& x : v) x = mul(c, x);
    }

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.q_ == b.q_; }

    std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

private:
    struct Tables {
        std::vector<std::uint32_t> modulus;
        Elem generator = 0;
        std::vector<Elem> exp;           // exp[i] = g^i, doubled length so log sums need no reduction
        std::vector<std::uint32_t> log;  // log[0] unused
    };

    template <class Op>
    Elem digitwise(Elem a, Elem b, Op op) const {
        Elem out = 0, place = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            out += op(a % p_, b % p_) * place;
            a /= p_;
            b /= p_;
            place *= p_;
        }
        return out;
    }

    static Elem encode(const detail::Poly& poly, std::uint32_t p) {
        Elem out = 0, place = 1;
        for (auto c : poly) {
            out += c * place;
            place *= p;
        }
        return out;
    }

    static Elem poly_mul_encoded(Elem a, Elem b, const detail::Poly& modulus, std::uint32_t p, std::uint32_t e) {
        const auto pa = detail::poly_from_index(a, p, e);
        const auto pb = detail::poly_from_index(b, p, e);
        detail::Poly prod(2 * e - 1, 0);
        for (std::uint32_t i = 0; i < e; ++i)
            for (std::uint32_t j = 0; j < e; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(pa[i]) * pb[j]) % p);
        auto rem = detail::poly_mod(std::move(prod), modulus, p);
        rem.resize(e, 0);
        return encode(rem, p);
    }

    static Elem poly_pow_encoded(Elem a, std::uint64_t n, const detail::Poly& modulus, std::uint32_t p,
                                 std::uint32_t e) {
        Elem result = 1;
        for (; n > 0; n >>= 1) {
            if (n & 1u) result = poly_mul_encoded(result, a, modulus, p, e);
            a = poly_mul_encoded(a, a, modulus, p, e);
        }
        return result;
    }

    static std::shared_ptr<const Tables> build_tables(std::uint32_t q, std::uint32_t p, std::uint32_t e) {
        auto t = std::make_shared<Tables>();
        t->modulus = detail::find_modulus(p, e);
        const auto factors = detail::prime_factors(q - 1);
        for (Elem g = 2; g < q; ++g) {
            bool primitive = true;
            for (auto l : factors)
                if (poly_pow_encoded(g, (q - 1) / l, t->modulus, p, e) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                t->generator = g;
                break;
            }
        }
        t->exp.resize(2 * std::size_t(q - 1));
        t->log.assign(q, 0);
        Elem x = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            t->exp[i] = x;
            t->log[x] = i;
            x = poly_mul_encoded(x, t->generator, t->modulus, p, e);
        }
        for (std::uint32_t i = q - 1; i < 2 * (q - 1); ++i) t->exp[i] = t->exp[i - (q - 1)];
        return t;
    }

    std::uint32_t q_ = 2;
    std::uint32_t p_ = 2;
    std::uint32_t e_ = 1;
    std::shared_ptr<const Tables> tables_;
};

inline Field field_create(std::uint64_t q) { return Field::create(q); }

}  // namespace nrt
