// hyperelliptic.hpp
//
// Genus-5 hyperelliptic models over F3 in reduced form
//
//     c y^2 = x^12 + b1 x^11 + b2 x^10 + a9 x^9 + ... + a0,
//     c in {1, 2}, (b1, b2) in {(1,0), (0,0), (0,1), (0,2)},
//
// with square-free right-hand side. Point counting over GF(3^e) sums the
// quadratic character fiber-wise and adds two points at infinity exactly when
// c is a square in the counting field. Isomorphism over k in {GF(3), GF(9)}
// is decided by exhausting GL2(k) on the homogenized forms F_i of c_i^{-1} f_i
// and testing h . F1 = lambda^2 F2; canonical forms are the lexicographic
// minima of {mu (h . F)} over h in GL2(k) and square scalars mu.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "g5/field.hpp"
#include "g5/forms.hpp"

namespace g5::hyper {

using ff::Fe;
using ff::FieldCtx;
using forms::BinaryForm12;
using forms::Mat2;
using forms::UniPoly;

struct HyperModel {
    int c = 1;                 // 1 or 2
    int b1 = 0, b2 = 0;        // one of (1,0), (0,0), (0,1), (0,2)
    std::array<int, 10> a{};   // a[i] multiplies x^i

    friend bool operator==(const HyperModel&, const HyperModel&) = default;
};

inline constexpr std::uint32_t kNumACombos = 59049;  // 3^10
inline constexpr std::uint32_t kHyperTotal = 2 * 4 * kNumACombos;
inline constexpr std::array<std::array<int, 2>, 4> kBPairs{{{1, 0}, {0, 0}, {0, 1}, {0, 2}}};

// Enumeration order: c in {1, 2}, then the four (b1, b2) pairs in the order
// above, then a as a base-3 counter with a0 least significant.
inline HyperModel hyper_model_at(std::uint32_t index) {
    if (index >= kHyperTotal) throw std::out_of_range("hyperelliptic enumeration index out of range");
    HyperModel m;
    std::uint32_t av = index % kNumACombos;
    std::uint32_t rest = index / kNumACombos;
    for (int i = 0; i < 10; ++i, av /= 3) m.a[i] = static_cast<int>(av % 3);
    m.b1 = kBPairs[rest % 4][0];
    m.b2 = kBPairs[rest % 4][1];
    m.c = (rest / 4 == 0) ? 1 : 2;
    return m;
}

inline std::uint32_t hyper_index_of(const HyperModel& m) {
    std::uint32_t av = 0;
    for (int i = 9; i >= 0; --i) av = av * 3 + static_cast<std::uint32_t>(m.a[i]);
    std::uint32_t bi = 0;
    while (bi < 4 && !(kBPairs[bi][0] == m.b1 && kBPairs[bi][1] == m.b2)) ++bi;
    if (bi == 4 || (m.c != 1 && m.c != 2)) throw std::invalid_argument("model is not in reduced form");
    return ((m.c == 1 ? 0u : 1u) * 4 + bi) * kNumACombos + av;
}

// Right-hand side as ascending F3 coefficients (monic, degree 12).
inline std::array<std::uint8_t, 13> rhs_coeffs(const HyperModel& m) {
    std::array<std::uint8_t, 13> f{};
    for (int i = 0; i < 10; ++i) f[i] = static_cast<std::uint8_t>(m.a[i]);
    f[10] = static_cast<std::uint8_t>(m.b2);
    f[11] = static_cast<std::uint8_t>(m.b1);
    f[12] = 1;
    return f;
}

inline UniPoly rhs_poly(const HyperModel& m, const FieldCtx& F) {
    std::vector<Fe> c;
    c.reserve(13);
    for (std::uint8_t v : rhs_coeffs(m)) c.push_back(F.from_base(v));
    return UniPoly(F, std::move(c));
}

// gcd(f, f') over F3 on stack arrays; in characteristic 3 a vanishing
// derivative is a repeated-factor pattern and counts as not square-free.
inline bool rhs_is_squarefree(const HyperModel& m) {
    auto f = rhs_coeffs(m);
    std::array<std::uint8_t, 13> g{};
    int dg = -1;
    for (int i = 1; i <= 12; ++i) {
        std::uint8_t v = static_cast<std::uint8_t>((i % 3) * f[i] % 3);
        g[i - 1] = v;
        if (v != 0) dg = i - 1;
    }
    if (dg < 0) return false;
    std::array<std::uint8_t, 13> r = f;
    int dr = 12;
    // Euclid: (r, g) -> (g, r mod g)
    for (;;) {
        std::uint8_t lead_inv = g[dg];  // elements of F3 are their own inverses
        while (dr >= dg) {
            std::uint8_t s = static_cast<std::uint8_t>(r[dr] * lead_inv % 3);
            if (s != 0)
                for (int i = 0; i <= dg; ++i)
                    r[dr - dg + i] = static_cast<std::uint8_t>((r[dr - dg + i] + 3 - s * g[i] % 3) % 3);
            while (dr >= 0 && r[dr] == 0) --dr;
            if (dr < 0) break;
        }
        if (dr < 0) return dg == 0;
        std::swap(r, g);
        std::swap(dr, dg);
    }
}

// ---------------------------------------------------------------------------
// point counting
// ---------------------------------------------------------------------------

// Context-bound counter: Frobenius-orbit representatives with precomputed
// packed power vectors. Coefficients live in F3, so the character of f(x) is
// constant on orbits and one evaluation per orbit suffices.
class HyperCounter {
public:
    explicit HyperCounter(int e) : ctx_(&ff::get_field(e)) {
        auto orbits = ctx_->frobenius_orbits();
        reps_.reserve(orbits.size());
        for (auto [rep, size] : orbits) {
            Rep r;
            r.size = size;
            std::uint32_t p = 1;
            for (int i = 0; i <= 12; ++i) {
                r.pow[i] = ctx_->pack(p);
                if (i < 12) p = ctx_->mul_idx(p, rep);
            }
            reps_.push_back(r);
        }
    }

    const FieldCtx& ctx() const { return *ctx_; }

    long long count(const HyperModel& m) const {
        auto f = rhs_coeffs(m);
        int cc = m.c == 1 ? 1 : ctx_->chi_idx(2);
        long long total = cc == 1 ? 2 : 0;  // points over infinity
        for (const Rep& r : reps_) {
            std::uint64_t acc = 0;
            for (int i = 0; i <= 12; ++i) {
                if (f[i] == 0) continue;
                acc = ff::FieldCtx::lane_add(acc, r.pow[i]);
                if (f[i] == 2) acc = ff::FieldCtx::lane_add(acc, r.pow[i]);
            }
            std::uint32_t t = ff::FieldCtx::unpack(acc);
            long long fiber = t == 0 ? 1 : 1 + ctx_->chi_idx(t) * cc;
            total += static_cast<long long>(r.size) * fiber;
        }
        return total;
    }

private:
    struct Rep {
        std::uint32_t size;
        std::array<std::uint64_t, 13> pow;
    };
    const FieldCtx* ctx_;
    std::vector<Rep> reps_;
};

inline const HyperCounter& get_hyper_counter(int e) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<HyperCounter>> cache;
    if (e < 1 || e > 10) throw std::invalid_argument("counting supports extensions 1..10");
    std::lock_guard lock(mu);
    auto& slot = cache[e];
    if (!slot) slot = std::make_unique<HyperCounter>(e);
    return *slot;
}

inline long long count_points(const HyperModel& m, int e) { return get_hyper_counter(e).count(m); }

// Generic variant for arbitrary monic f (any genus); same counting formula.
inline long long count_points_generic(int c, const std::vector<int>& f_ascending, int e) {
    const FieldCtx& F = ff::get_field(e);
    Fe fc = F.from_base(c);
    if (fc == F.zero()) throw std::invalid_argument("c must be a unit");
    int cc = F.chi(fc);
    long long total = cc == 1 ? 2 : 0;
    UniPoly f = UniPoly::from_ints(F, f_ascending);
    for (auto [rep, size] : F.frobenius_orbits()) {
        Fe t = f.eval(F.from_index(rep));
        long long fiber = t == F.zero() ? 1 : 1 + F.chi(t) * cc;
        total += static_cast<long long>(size) * fiber;
    }
    return total;
}

// ---------------------------------------------------------------------------
// reduced-form family for p coprime to 2g+2 (not exercised for p = 3, g = 5;
// kept as the generalization hook for other genera)
// ---------------------------------------------------------------------------

struct HyperModelCoprime {
    int genus = 1;
    int c = 1;               // 1 or 2
    int b = 0;               // x^(2g) coefficient, in {0, 1, 2}
    std::vector<int> a;      // a[i] multiplies x^i, i < 2g
};

inline std::uint64_t hyper_coprime_total(int g) {
    std::uint64_t n = 6;  // c, b choices
    for (int i = 0; i < 2 * g; ++i) n *= 3;
    return n;
}

inline HyperModelCoprime hyper_coprime_model_at(int g, std::uint64_t index) {
    if ((2 * g + 2) % 3 == 0) throw std::invalid_argument("family requires 3 coprime to 2g+2");
    if (index >= hyper_coprime_total(g)) throw std::out_of_range("enumeration index out of range");
    HyperModelCoprime m;
    m.genus = g;
    m.a.resize(2 * g);
    for (int i = 0; i < 2 * g; ++i, index /= 3) m.a[i] = static_cast<int>(index % 3);
    m.b = static_cast<int>(index % 3);
    index /= 3;
    m.c = index == 0 ? 1 : 2;
    return m;
}

inline std::vector<int> rhs_coeffs_coprime(const HyperModelCoprime& m) {
    std::vector<int> f(2 * m.genus + 3, 0);
    for (int i = 0; i < 2 * m.genus; ++i) f[i] = m.a[i];
    f[2 * m.genus] = m.b;
    f[2 * m.genus + 2] = 1;
    return f;
}

// ---------------------------------------------------------------------------
// isomorphism and canonical forms over k in {GF(3), GF(9)}
// ---------------------------------------------------------------------------

// Homogenization of c^{-1} f in (x, z); the object the GL2 action compares.
inline BinaryForm12 iso_form(const HyperModel& m, const FieldCtx& k) {
    Fe scale = k.inv(k.from_base(m.c));
    return forms::homogenize12(rhs_poly(m, k), scale);
}

namespace detail {

// GL2(k) with, per element, the 13x13 substitution matrix on coefficient
// vectors (column i = image of the basis monomial x^(12-i) z^i), plus the
// square scalars used for lambda^2 normalization.
struct Gl2Data {
    const FieldCtx* ctx;
    std::vector<std::array<std::uint32_t, 4>> mats;
    std::vector<std::array<std::uint32_t, 169>> sub;
    std::vector<std::uint32_t> squares;  // nonzero square indices

    explicit Gl2Data(const FieldCtx& k) : ctx(&k) {
        std::uint32_t q = k.order();
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                for (std::uint32_t c = 0; c < q; ++c)
                    for (std::uint32_t d = 0; d < q; ++d) {
                        std::uint32_t det = k.add_idx(k.mul_idx(a, d), k.neg_idx(k.mul_idx(b, c)));
                        if (det == 0) continue;
                        mats.push_back({a, b, c, d});
                    }
        sub.resize(mats.size());
        for (std::size_t h = 0; h < mats.size(); ++h) {
            auto [a, b, c, d] = mats[h];
            Mat2 hm(k, k.from_index(a), k.from_index(b), k.from_index(c), k.from_index(d));
            for (int i = 0; i <= 12; ++i) {
                BinaryForm12 basis(k);
                basis.c[i] = k.one();
                BinaryForm12 img = forms::act_gl2(hm, basis);
                for (int j = 0; j <= 12; ++j) sub[h][static_cast<std::size_t>(j) * 13 + i] = k.index_of(img.c[j]);
            }
        }
        for (std::uint32_t v = 1; v < q; ++v)
            if (k.is_square(k.from_index(v))) squares.push_back(v);
    }
};

inline const Gl2Data& gl2_data(const FieldCtx& k) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Gl2Data>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[k.degree()];
    if (!slot) slot = std::make_unique<Gl2Data>(k);
    return *slot;
}

inline std::array<std::uint32_t, 13> form_indices(const BinaryForm12& f) {
    std::array<std::uint32_t, 13> v{};
    for (int i = 0; i <= 12; ++i) v[i] = f.ctx->index_of(f.c[i]);
    return v;
}

inline std::uint32_t apply_row(const FieldCtx& k, const std::array<std::uint32_t, 169>& sub, int row,
                               const std::array<std::uint32_t, 13>& f) {
    std::uint64_t acc = 0;
    const std::uint32_t* r = sub.data() + static_cast<std::size_t>(row) * 13;
    for (int i = 0; i <= 12; ++i) {
        if (f[i] == 0 || r[i] == 0) continue;
        acc = ff::FieldCtx::lane_add(acc, k.pack(k.mul_idx(r[i], f[i])));
    }
    return ff::FieldCtx::unpack(acc);
}

}  // namespace detail

// True iff some h in GL2(k) and lambda in k^x give h . F1 = lambda^2 F2.
inline bool isomorphic(const HyperModel& m1, const HyperModel& m2, const FieldCtx& k) {
    if (k.degree() > 2) throw std::invalid_argument("isomorphism testing is over GF(3) or GF(9)");
    const auto& G = detail::gl2_data(k);
    auto f1 = detail::form_indices(iso_form(m1, k));
    auto f2 = detail::form_indices(iso_form(m2, k));
    for (const auto& sub : G.sub) {
        std::uint32_t ratio = 0;  // image = ratio * f2, ratio a nonzero square
        bool ok = true;
        for (int j = 0; j <= 12 && ok; ++j) {
            std::uint32_t v = detail::apply_row(k, sub, j, f1);
            if (f2[j] == 0) {
                ok = v == 0;
            } else if (v == 0) {
                ok = false;
            } else {
                std::uint32_t r = k.mul_idx(v, k.index_of(k.inv(k.from_index(f2[j]))));
                if (ratio == 0) {
                    ratio = r;
                    ok = k.is_square(k.from_index(r));
                } else {
                    ok = r == ratio;
                }
            }
        }
        if (ok) return true;
    }
    return false;
}

// Lexicographically least vector in {mu (h . F)} under the element order
// "zero first, then ascending discrete-log index", compared coefficient-wise
// from the x^12 end.
inline std::array<Fe, 13> canonical_form(const HyperModel& m, const FieldCtx& k) {
    if (k.degree() > 2) throw std::invalid_argument("canonical forms are over GF(3) or GF(9)");
    const auto& G = detail::gl2_data(k);
    auto f = detail::form_indices(iso_form(m, k));

    std::array<std::uint32_t, 13> best_keys;
    best_keys.fill(UINT32_MAX);
    std::array<std::uint32_t, 13> best_vals{};

    std::array<std::uint32_t, 13> row{};
    for (const auto& sub : G.sub) {
        std::uint32_t mu = 0;  // scale fixed at the first nonzero coefficient
        bool rejected = false, strictly_better = false;
        for (int j = 0; j <= 12; ++j) {
            std::uint32_t v = detail::apply_row(k, sub, j, f);
            std::uint32_t key;
            if (v == 0) {
                key = 0;
            } else {
                if (mu == 0) {
                    // choose the square scalar minimizing this coefficient's key
                    std::uint32_t best_mu = 0, best_key = UINT32_MAX;
                    for (std::uint32_t s : G.squares) {
                        std::uint32_t cand = 1 + k.log_of(k.mul_idx(s, v));
                        if (cand < best_key) {
                            best_key = cand;
                            best_mu = s;
                        }
                    }
                    mu = best_mu;
                }
                v = k.mul_idx(mu, v);
                key = 1 + k.log_of(v);
            }
            row[j] = v;
            if (!strictly_better) {
                if (key > best_keys[j]) {
                    rejected = true;
                    break;
                }
                if (key < best_keys[j]) strictly_better = true;
            }
        }
        if (rejected) continue;
        if (strictly_better) {
            best_vals = row;
            for (int j = 0; j <= 12; ++j) best_keys[j] = row[j] == 0 ? 0 : 1 + k.log_of(row[j]);
        }
    }
    std::array<Fe, 13> out;
    for (int j = 0; j <= 12; ++j) out[j] = k.from_index(best_vals[j]);
    return out;
}

}  // namespace g5::hyper
