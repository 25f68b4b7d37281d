// field.hpp
//
// Deterministic arithmetic for GF(3^e), 1 <= e <= 12.
//
// Elements are stored as canonical indices in [0, 3^e): the base-3 digits of
// the index are the coefficients of the polynomial-basis representation,
// lowest degree first. Two elements are equal iff their indices are equal.
// For e <= 10 a context carries full log/antilog tables (multiplication,
// inversion and the quadratic character are table lookups); for e in {11,12}
// multiplication falls back to polynomial arithmetic modulo the context
// modulus. Addition never needs tables: indices are expanded into 4-bit
// lanes (one base-3 digit per lane) and reduced lane-wise mod 3.
//
// Context construction is reproducible: the modulus is the lexicographically
// smallest monic irreducible polynomial of degree e (coefficient strings
// compared most-significant digit first, 0 < 1 < 2), and the generator is
// the element of smallest index with multiplicative order 3^e - 1.

#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace g5::ff {

inline constexpr int kMaxDegree = 12;

// Tagged element handle: low 20 bits index, high bits the context degree.
// The tag lets every operation reject operands from a foreign context.
struct Fe {
    std::uint32_t raw = 0;
    friend bool operator==(Fe, Fe) = default;
};

namespace detail {

inline constexpr std::uint32_t kIndexMask = 0xFFFFFu;
inline constexpr int kTagShift = 20;

inline constexpr std::uint64_t lane_repeat(std::uint64_t nibble) {
    std::uint64_t r = 0;
    for (int i = 0; i < kMaxDegree; ++i) r |= nibble << (4 * i);
    return r;
}

inline constexpr std::uint64_t kLaneOnes = lane_repeat(1);
inline constexpr std::uint64_t kLaneThrees = lane_repeat(3);

// Digit-wise sum mod 3 of two packed values whose lanes are already < 3.
inline constexpr std::uint64_t lane_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t t = a + b;  // lanes <= 4, no carry out of a nibble
    std::uint64_t m = ((t + kLaneOnes) >> 2) & kLaneOnes;
    return t - (m << 1) - m;
}

inline constexpr std::uint64_t lane_neg(std::uint64_t a) {
    std::uint64_t t = kLaneThrees - a;  // lanes in 1..3
    std::uint64_t m = ((t + kLaneOnes) >> 2) & kLaneOnes;
    return t - (m << 1) - m;
}

inline constexpr std::uint64_t pack_index(std::uint32_t v) {
    std::uint64_t p = 0;
    for (int i = 0; v != 0; ++i, v /= 3) p |= static_cast<std::uint64_t>(v % 3) << (4 * i);
    return p;
}

// Per-byte tables turning a packed value back into a base-3 index.
// Byte j holds digits 2j and 2j+1, contributing (d0 + 3*d1) * 9^j.
struct UnpackTables {
    std::uint32_t t[6][256] = {};
    constexpr UnpackTables() {
        std::uint32_t pow9 = 1;
        for (int j = 0; j < 6; ++j, pow9 *= 9)
            for (int b = 0; b < 256; ++b) {
                std::uint32_t d0 = b & 0xF, d1 = (b >> 4) & 0xF;
                if (d0 > 2 || d1 > 2) continue;  // never produced by valid lanes
                t[j][b] = (d0 + 3 * d1) * pow9;
            }
    }
};

inline constexpr UnpackTables kUnpack{};

inline constexpr std::uint32_t unpack_index(std::uint64_t p) {
    return kUnpack.t[0][p & 0xFF] + kUnpack.t[1][(p >> 8) & 0xFF] +
           kUnpack.t[2][(p >> 16) & 0xFF] + kUnpack.t[3][(p >> 24) & 0xFF] +
           kUnpack.t[4][(p >> 32) & 0xFF] + kUnpack.t[5][(p >> 40) & 0xFF];
}

using Digits = std::vector<std::uint8_t>;  // polynomial over F3, lowest degree first

inline void digits_trim(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Digits digits_mul(const Digits& a, const Digits& b) {
    if (a.empty() || b.empty()) return {};
    Digits r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint8_t>((r[i + j] + a[i] * b[j]) % 3);
    digits_trim(r);
    return r;
}

// Remainder of a by monic m.
inline Digits digits_mod(Digits a, const Digits& m) {
    assert(!m.empty() && m.back() == 1);
    digits_trim(a);
    while (a.size() >= m.size()) {
        std::uint8_t lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint8_t s = static_cast<std::uint8_t>((3 + a[shift + i] - lead * m[i] % 3) % 3);
                a[shift + i] = s;
            }
        }
        a.pop_back();
        digits_trim(a);
    }
    return a;
}

inline std::uint32_t digits_to_index(const Digits& a) {
    std::uint32_t v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * 3 + a[i];
    return v;
}

inline Digits index_to_digits(std::uint32_t v) {
    Digits a;
    for (; v != 0; v /= 3) a.push_back(static_cast<std::uint8_t>(v % 3));
    return a;
}

}  // namespace detail

enum class Op { add, sub, mul, div, pow };

class FieldCtx {
public:
    explicit FieldCtx(int e) : e_(e) {
        if (e < 1 || e > kMaxDegree) throw std::invalid_argument("extension degree must be in 1..12");
        q_ = 1;
        for (int i = 0; i < e; ++i) q_ *= 3;
        find_modulus();
        find_generator();
        if (q_ <= 59049) build_tables();  // e <= 10
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    int degree() const { return e_; }
    std::uint32_t order() const { return q_; }
    bool has_tables() const { return !log_.empty(); }
    const std::vector<std::uint8_t>& modulus() const { return modulus_; }

    Fe zero() const { return wrap(0); }
    Fe one() const { return wrap(1); }
    Fe zeta() const { return wrap(zeta_); }

    // Embeds a prime-field constant; reduces any integer mod 3.
    Fe from_base(long long c) const { return wrap(static_cast<std::uint32_t>(((c % 3) + 3) % 3)); }

    Fe from_index(std::uint32_t v) const {
        if (v >= q_) throw std::out_of_range("element index out of range");
        return wrap(v);
    }

    std::uint32_t index_of(Fe a) const { return idx(a); }

    // Coefficients of the polynomial-basis representation, lowest degree first.
    std::vector<int> coeffs_of(Fe a) const {
        std::uint32_t v = idx(a);
        std::vector<int> c(e_);
        for (int i = 0; i < e_; ++i, v /= 3) c[i] = static_cast<int>(v % 3);
        return c;
    }

    Fe add(Fe a, Fe b) const { return wrap(add_idx(idx(a), idx(b))); }
    Fe sub(Fe a, Fe b) const { return wrap(add_idx(idx(a), neg_idx(idx(b)))); }
    Fe neg(Fe a) const { return wrap(neg_idx(idx(a))); }
    Fe mul(Fe a, Fe b) const { return wrap(mul_idx(idx(a), idx(b))); }

    Fe inv(Fe a) const {
        std::uint32_t v = idx(a);
        if (v == 0) throw std::domain_error("division by zero");
        if (has_tables()) return wrap(exp_[q_ - 1 - log_[v]]);
        return pow(a, static_cast<long long>(q_) - 2);
    }

    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    // Square-and-multiply; negative exponents go through the inverse.
    Fe pow(Fe a, long long n) const {
        std::uint32_t v = idx(a);
        if (v == 0) {
            if (n < 0) throw std::domain_error("division by zero");
            return n == 0 ? one() : zero();
        }
        if (n < 0) {
            a = inv(a);
            n = -n;
        }
        std::uint64_t m = static_cast<std::uint64_t>(n) % (q_ - 1);
        std::uint32_t base = idx(a), acc = 1;
        while (m != 0) {
            if (m & 1) acc = mul_idx(acc, base);
            base = mul_idx(base, base);
            m >>= 1;
        }
        return wrap(acc);
    }

    Fe arith(Fe a, Fe b, Op op) const {
        switch (op) {
            case Op::add: return add(a, b);
            case Op::sub: return sub(a, b);
            case Op::mul: return mul(a, b);
            case Op::div: return div(a, b);
            case Op::pow: return pow(a, static_cast<long long>(idx(b)));
        }
        throw std::invalid_argument("unknown arithmetic op");
    }

    // a^((q-1)/2) in {0,1}; zero counts as a square.
    bool is_square(Fe a) const { return chi(a) >= 0; }

    // Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    int chi(Fe a) const { return chi_idx(idx(a)); }

    // Comparison key for canonical forms: 0 sorts first, then ascending
    // discrete-log index.
    std::uint32_t canon_key(Fe a) const {
        std::uint32_t v = idx(a);
        if (v == 0) return 0;
        return 1 + log_of(v);
    }

    // Number of distinct roots in this field of the polynomial with the given
    // coefficients (lowest degree first). Zero polynomial counts q, nonzero
    // constants count 0; otherwise deg gcd(X^q - X, f), with X^q reduced mod f
    // by repeated squaring.
    int count_poly_roots(std::span<const Fe> coeffs) const {
        std::vector<std::uint32_t> f;
        f.reserve(coeffs.size());
        for (Fe c : coeffs) f.push_back(idx(c));
        return count_poly_roots_idx(f);
    }

    int count_poly_roots_idx(std::vector<std::uint32_t> f) const {
        while (!f.empty() && f.back() == 0) f.pop_back();
        if (f.empty()) return static_cast<int>(q_);
        if (f.size() == 1) return 0;
        // X^q mod f by square-and-multiply on the exponent.
        std::vector<std::uint32_t> base = pm_mod(std::vector<std::uint32_t>{0, 1}, f);
        std::uint32_t m = q_;
        bool first = true;
        std::vector<std::uint32_t> acc{1};
        while (m != 0) {
            if (m & 1) {
                acc = first ? base : pm_mod(pm_mul(acc, base), f);
                first = false;
            }
            m >>= 1;
            if (m != 0) base = pm_mod(pm_mul(base, base), f);
        }
        // gcd(f, X^q - X mod f)
        if (acc.size() < 2) acc.resize(2, 0);
        acc[1] = add_idx(acc[1], neg_idx(1));
        while (!acc.empty() && acc.back() == 0) acc.pop_back();
        std::vector<std::uint32_t> g = pm_gcd(f, acc);
        return g.empty() ? 0 : static_cast<int>(g.size()) - 1;
    }

    // ---- raw-index kernels (hot paths; indices must belong to this context) ----

    std::uint64_t pack(std::uint32_t v) const { return has_tables() ? pack_[v] : detail::pack_index(v); }
    static std::uint32_t unpack(std::uint64_t p) { return detail::unpack_index(p); }
    static std::uint64_t lane_add(std::uint64_t a, std::uint64_t b) { return detail::lane_add(a, b); }

    std::uint32_t add_idx(std::uint32_t a, std::uint32_t b) const {
        return detail::unpack_index(detail::lane_add(pack(a), pack(b)));
    }

    std::uint32_t neg_idx(std::uint32_t a) const { return detail::unpack_index(detail::lane_neg(pack(a))); }

    std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        if (has_tables()) return exp_[log_[a] + log_[b]];
        return detail::digits_to_index(
            detail::digits_mod(detail::digits_mul(detail::index_to_digits(a), detail::index_to_digits(b)), modulus_));
    }

    int chi_idx(std::uint32_t v) const {
        if (v == 0) return 0;
        if (has_tables()) return (log_[v] & 1) ? -1 : 1;
        return pow(wrap(v), (q_ - 1) / 2) == one() ? 1 : -1;
    }

    std::uint32_t log_of(std::uint32_t v) const {
        assert(v != 0 && v < q_);
        if (has_tables()) return log_[v];
        // slow fallback for table-less contexts
        std::uint32_t cur = 1;
        for (std::uint32_t k = 0; k < q_ - 1; ++k) {
            if (cur == v) return k;
            cur = mul_idx(cur, zeta_);
        }
        throw std::logic_error("element not generated by zeta");
    }

    std::uint32_t exp_of(std::uint32_t k) const {
        if (has_tables()) return exp_[k % (q_ - 1)];
        return index_of(pow(zeta(), k));
    }

    // Frobenius orbits {v, v^3, v^9, ...} of the whole field, as
    // (representative index, orbit size) pairs; zero is its own orbit.
    // Functions fixed by x -> x^3 on F3-rational data are constant on orbits,
    // so counting loops only need one evaluation per orbit.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frobenius_orbits() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        out.reserve(q_ / e_ + 2);
        out.emplace_back(0, 1);
        if (!has_tables()) {
            std::vector<bool> seen(q_, false);
            for (std::uint32_t v = 1; v < q_; ++v) {
                if (seen[v]) continue;
                std::uint32_t size = 0, w = v;
                do {
                    seen[w] = true;
                    ++size;
                    w = mul_idx(mul_idx(w, w), w);
                } while (w != v);
                out.emplace_back(v, size);
            }
            return out;
        }
        std::vector<bool> seen(q_ - 1, false);
        for (std::uint32_t m = 0; m < q_ - 1; ++m) {
            if (seen[m]) continue;
            std::uint32_t size = 0;
            std::uint64_t k = m;
            do {
                seen[k] = true;
                ++size;
                k = (k * 3) % (q_ - 1);
            } while (k != m);
            out.emplace_back(exp_[m], size);
        }
        return out;
    }

private:
    Fe wrap(std::uint32_t v) const { return Fe{v | (static_cast<std::uint32_t>(e_) << detail::kTagShift)}; }

    std::uint32_t idx(Fe a) const {
        if ((a.raw >> detail::kTagShift) != static_cast<std::uint32_t>(e_))
            throw std::invalid_argument("element belongs to a different field context");
        return a.raw & detail::kIndexMask;
    }

    // Smallest monic irreducible of degree e: minimal integer encoding of the
    // non-leading coefficient string (most significant digit first).
    void find_modulus() {
        for (std::uint32_t m = 0;; ++m) {
            detail::Digits f = detail::index_to_digits(m);
            f.resize(e_ + 1, 0);
            f[e_] = 1;
            if (is_irreducible(f)) {
                modulus_ = f;
                return;
            }
        }
    }

    // No factor of degree <= e/2: gcd(x^(3^k) - x, f) is constant for all
    // k <= e/2.
    bool is_irreducible(const detail::Digits& f) const {
        detail::Digits r{0, 1};
        r = detail::digits_mod(r, f);
        for (int k = 1; k <= e_ / 2; ++k) {
            r = detail::digits_mod(detail::digits_mul(detail::digits_mul(r, r), r), f);
            detail::Digits d = r;
            if (d.size() < 2) d.resize(2, 0);
            d[1] = static_cast<std::uint8_t>((3 + d[1] - 1) % 3);
            detail::digits_trim(d);
            detail::Digits g = f;
            while (!d.empty()) {
                detail::Digits t = digits_gcd_step(g, d);
                g = d;
                d = t;
            }
            if (g.size() > 1) return false;
        }
        return true;
    }

    static detail::Digits digits_gcd_step(detail::Digits a, const detail::Digits& b) {
        // remainder of a by (non-monic allowed) b
        std::uint8_t lead = b.back();
        std::uint8_t lead_inv = lead == 1 ? 1 : 2;  // inverses in F3
        while (a.size() >= b.size()) {
            std::uint8_t c = static_cast<std::uint8_t>(a.back() * lead_inv % 3);
            if (c != 0) {
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = static_cast<std::uint8_t>((3 + a[shift + i] - c * b[i] % 3) % 3);
            }
            a.pop_back();
            detail::digits_trim(a);
            if (a.empty()) break;
        }
        return a;
    }

    void find_generator() {
        std::vector<std::uint32_t> prime_factors;
        std::uint32_t n = q_ - 1;
        for (std::uint32_t p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                prime_factors.push_back(p);
                while (n % p == 0) n /= p;
            }
        if (n > 1) prime_factors.push_back(n);

        for (std::uint32_t v = 2; v < q_; ++v) {
            bool ok = true;
            for (std::uint32_t p : prime_factors)
                if (slow_pow(v, (q_ - 1) / p) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                zeta_ = v;
                return;
            }
        }
        throw std::logic_error("no generator found");
    }

    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return detail::digits_to_index(
            detail::digits_mod(detail::digits_mul(detail::index_to_digits(a), detail::index_to_digits(b)), modulus_));
    }

    std::uint32_t slow_pow(std::uint32_t a, std::uint32_t n) const {
        std::uint32_t acc = 1;
        while (n != 0) {
            if (n & 1) acc = slow_mul(acc, a);
            a = slow_mul(a, a);
            n >>= 1;
        }
        return acc;
    }

    void build_tables() {
        log_.assign(q_, 0);
        exp_.assign(2 * (q_ - 1), 0);
        std::uint32_t cur = 1;
        for (std::uint32_t k = 0; k < q_ - 1; ++k) {
            exp_[k] = cur;
            exp_[k + q_ - 1] = cur;
            log_[cur] = k;
            cur = slow_mul(cur, zeta_);
        }
        if (cur != 1) throw std::logic_error("generator order mismatch");
        pack_.resize(q_);
        for (std::uint32_t v = 0; v < q_; ++v) pack_[v] = detail::pack_index(v);
    }

    // polynomial helpers over raw indices (lowest degree first, trimmed)
    std::vector<std::uint32_t> pm_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<std::uint32_t> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) r[i + j] = add_idx(r[i + j], mul_idx(a[i], b[j]));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    std::vector<std::uint32_t> pm_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& m) const {
        assert(!m.empty());
        std::uint32_t lead_inv = has_tables() && m.back() != 0 ? exp_[q_ - 1 - log_[m.back()]]
                                                               : index_of(inv(wrap(m.back())));
        while (a.size() >= m.size()) {
            std::uint32_t c = mul_idx(a.back(), lead_inv);
            if (c != 0) {
                std::size_t shift = a.size() - m.size();
                for (std::size_t i = 0; i + 1 < m.size(); ++i)
                    a[shift + i] = add_idx(a[shift + i], neg_idx(mul_idx(c, m[i])));
            }
            a.pop_back();
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a;
    }

    std::vector<std::uint32_t> pm_gcd(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b) const {
        while (!b.empty()) {
            std::vector<std::uint32_t> r = pm_mod(std::move(a), b);
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.empty() && a.back() != 1) {
            std::uint32_t s = index_of(inv(wrap(a.back())));
            for (auto& c : a) c = mul_idx(c, s);
        }
        return a;
    }

    int e_;
    std::uint32_t q_ = 0;
    std::uint32_t zeta_ = 0;
    std::vector<std::uint8_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint64_t> pack_;
};

// Process-wide context cache. Contexts are immutable once built and safe to
// share across threads.
inline const FieldCtx& get_field(int e) {
    static std::mutex mu;
    static std::array<std::unique_ptr<FieldCtx>, kMaxDegree + 1> cache;
    if (e < 1 || e > kMaxDegree) throw std::invalid_argument("extension degree must be in 1..12");
    std::lock_guard lock(mu);
    if (!cache[e]) cache[e] = std::make_unique<FieldCtx>(e);
    return *cache[e];
}

}  // namespace g5::ff
