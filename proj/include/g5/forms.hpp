// forms.hpp
//
// Polynomial containers and coordinate-change actions used by the curve
// enumerators: univariate polynomials over a field context, homogeneous
// degree-12 binary forms in (x, z), ternary quintics in (x, y, z), and the
// GL2/GL3 substitution actions.
//
// Substitution convention (fixed project-wide): a matrix acts on the column
// of variables, so (h . F)(v) = F(h v). For binary forms this reads
// (x, z) -> (h11 x + h12 z, h21 x + h22 z). Under this convention composition
// satisfies h1 . (h2 . F) = (h2 h1) . F.
//
// Monomial orders are part of the serialization contract:
//   BinaryForm12: coefficient i belongs to x^(12-i) z^i  (descending x).
//   TernaryQuintic: z-degree descending, then x-degree descending:
//     z^5 | x z^4, y z^4 | x^2 z^3, x y z^3, y^2 z^3 |
//     x^3 z^2, x^2 y z^2, x y^2 z^2, y^3 z^2 |
//     x^4 z, x^3 y z, x^2 y^2 z, x y^3 z, y^4 z |
//     x^5, x^4 y, x^3 y^2, x^2 y^3, x y^4, y^5      (21 slots).

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "g5/field.hpp"

namespace g5::forms {

using ff::Fe;
using ff::FieldCtx;

// ---------------------------------------------------------------------------
// univariate polynomials (lowest degree first, highest coefficient nonzero)
// ---------------------------------------------------------------------------

struct UniPoly {
    const FieldCtx* ctx = nullptr;
    std::vector<Fe> c;

    UniPoly() = default;
    UniPoly(const FieldCtx& f, std::vector<Fe> coeffs) : ctx(&f), c(std::move(coeffs)) { normalize(); }

    static UniPoly from_ints(const FieldCtx& f, const std::vector<int>& v) {
        std::vector<Fe> c;
        c.reserve(v.size());
        for (int x : v) c.push_back(f.from_base(x));
        return UniPoly(f, std::move(c));
    }

    void normalize() {
        while (!c.empty() && c.back() == ctx->zero()) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    Fe coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : ctx->zero();
    }

    Fe eval(Fe x) const {
        Fe acc = ctx->zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = ctx->add(ctx->mul(acc, x), c[i]);
        return acc;
    }

    UniPoly derivative() const {
        if (c.size() <= 1) return UniPoly(*ctx, {});
        std::vector<Fe> d;
        d.reserve(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d.push_back(ctx->mul(c[i], ctx->from_base(static_cast<int>(i))));
        return UniPoly(*ctx, std::move(d));
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        Fe s = ctx->inv(c.back());
        std::vector<Fe> d = c;
        for (Fe& x : d) x = ctx->mul(x, s);
        return UniPoly(*ctx, std::move(d));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }
};

inline void check_same_ctx(const UniPoly& a, const UniPoly& b) {
    if (a.ctx != b.ctx) throw std::invalid_argument("polynomials from different field contexts");
}

inline UniPoly mul(const UniPoly& a, const UniPoly& b) {
    check_same_ctx(a, b);
    const FieldCtx& F = *a.ctx;
    if (a.is_zero() || b.is_zero()) return UniPoly(F, {});
    std::vector<Fe> r(a.c.size() + b.c.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    return UniPoly(F, std::move(r));
}

inline UniPoly rem(UniPoly a, const UniPoly& b) {
    check_same_ctx(a, b);
    const FieldCtx& F = *a.ctx;
    if (b.is_zero()) throw std::domain_error("remainder by zero polynomial");
    Fe lead_inv = F.inv(b.c.back());
    while (a.c.size() >= b.c.size()) {
        Fe s = F.mul(a.c.back(), lead_inv);
        std::size_t shift = a.c.size() - b.c.size();
        for (std::size_t i = 0; i + 1 < b.c.size(); ++i)
            a.c[shift + i] = F.sub(a.c[shift + i], F.mul(s, b.c[i]));
        a.c.pop_back();
        a.normalize();
        if (a.c.empty()) break;
    }
    return a;
}

// Monic greatest common divisor; gcd(0,0) = 0.
inline UniPoly gcd_univ(UniPoly a, UniPoly b) {
    check_same_ctx(a, b);
    while (!b.is_zero()) {
        UniPoly r = rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// True iff gcd(f, f') is constant. A vanishing derivative (only cube-power
// patterns in characteristic 3) is never square-free.
inline bool is_squarefree(const UniPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("square-free test needs degree >= 1");
    UniPoly d = f.derivative();
    if (d.is_zero()) return false;
    return gcd_univ(f, d).degree() == 0;
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

struct Mat2 {
    const FieldCtx* ctx = nullptr;
    Fe a, b, c, d;  // rows (a b; c d)

    Mat2(const FieldCtx& f, Fe a_, Fe b_, Fe c_, Fe d_) : ctx(&f), a(a_), b(b_), c(c_), d(d_) {}

    Fe det() const { return ctx->sub(ctx->mul(a, d), ctx->mul(b, c)); }
};

struct Mat3 {
    const FieldCtx* ctx = nullptr;
    std::array<std::array<Fe, 3>, 3> m{};

    Mat3(const FieldCtx& f, std::array<std::array<Fe, 3>, 3> rows) : ctx(&f), m(rows) {}

    Fe det() const {
        const FieldCtx& F = *ctx;
        Fe t0 = F.mul(m[0][0], F.sub(F.mul(m[1][1], m[2][2]), F.mul(m[1][2], m[2][1])));
        Fe t1 = F.mul(m[0][1], F.sub(F.mul(m[1][0], m[2][2]), F.mul(m[1][2], m[2][0])));
        Fe t2 = F.mul(m[0][2], F.sub(F.mul(m[1][0], m[2][1]), F.mul(m[1][1], m[2][0])));
        return F.add(F.sub(t0, t1), t2);
    }
};

inline Mat2 mat2_mul(const Mat2& x, const Mat2& y) {
    const FieldCtx& F = *x.ctx;
    return Mat2(F, F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
                F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d)));
}

inline Mat3 mat3_mul(const Mat3& x, const Mat3& y) {
    const FieldCtx& F = *x.ctx;
    std::array<std::array<Fe, 3>, 3> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Fe s = F.zero();
            for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(x.m[i][k], y.m[k][j]));
            r[i][j] = s;
        }
    return Mat3(F, r);
}

// ---------------------------------------------------------------------------
// degree-12 binary forms
// ---------------------------------------------------------------------------

struct BinaryForm12 {
    const FieldCtx* ctx = nullptr;
    std::array<Fe, 13> c{};  // c[i] multiplies x^(12-i) z^i

    BinaryForm12() = default;
    explicit BinaryForm12(const FieldCtx& f) : ctx(&f) { c.fill(f.zero()); }

    friend bool operator==(const BinaryForm12& a, const BinaryForm12& b) { return a.c == b.c; }
};

// Homogenization of a degree-12 polynomial g(x), optionally scaled:
// coefficient of x^i in g lands on x^i z^(12-i).
inline BinaryForm12 homogenize12(const UniPoly& g, Fe scale) {
    if (g.degree() > 12) throw std::invalid_argument("polynomial degree exceeds 12");
    const FieldCtx& F = *g.ctx;
    BinaryForm12 out(F);
    for (int i = 0; i <= 12; ++i) out.c[12 - i] = F.mul(scale, g.coeff(i));
    return out;
}

namespace detail {

// coefficient vectors of (p x + q z)^k for k = 0..12; entry [k][s] multiplies
// x^s z^(k-s)
inline void linear_powers(const FieldCtx& F, Fe p, Fe q, std::array<std::array<Fe, 13>, 13>& out) {
    out[0][0] = F.one();
    for (int k = 1; k <= 12; ++k) {
        for (int s = 0; s <= k; ++s) {
            Fe t = F.zero();
            if (s > 0) t = F.add(t, F.mul(out[k - 1][s - 1], p));
            if (s < k) t = F.add(t, F.mul(out[k - 1][s], q));
            out[k][s] = t;
        }
    }
}

}  // namespace detail

// Exact substitution (x, z) -> (h11 x + h12 z, h21 x + h22 z).
inline BinaryForm12 act_gl2(const Mat2& h, const BinaryForm12& F12) {
    const FieldCtx& F = *F12.ctx;
    if (h.det() == F.zero()) throw std::invalid_argument("singular coordinate change");
    std::array<std::array<Fe, 13>, 13> px, pz;
    detail::linear_powers(F, h.a, h.b, px);  // image of x
    detail::linear_powers(F, h.c, h.d, pz);  // image of z
    BinaryForm12 out(F);
    for (int i = 0; i <= 12; ++i) {
        Fe fi = F12.c[i];  // multiplies x^(12-i) z^i
        if (fi == F.zero()) continue;
        int dx = 12 - i;
        for (int s = 0; s <= dx; ++s) {
            if (px[dx][s] == F.zero()) continue;
            Fe base = F.mul(fi, px[dx][s]);
            for (int t = 0; t <= i; ++t) {
                Fe term = F.mul(base, pz[i][t]);
                if (term == F.zero()) continue;
                int xs = s + t;
                out.c[12 - xs] = F.add(out.c[12 - xs], term);
            }
        }
    }
    return out;
}

inline Fe eval_binary12(const BinaryForm12& F12, Fe x, Fe z) {
    const FieldCtx& F = *F12.ctx;
    Fe acc = F.zero();
    Fe zp = F.one();
    std::array<Fe, 13> xp;
    xp[0] = F.one();
    for (int i = 1; i <= 12; ++i) xp[i] = F.mul(xp[i - 1], x);
    for (int i = 0; i <= 12; ++i) {
        acc = F.add(acc, F.mul(F12.c[i], F.mul(xp[12 - i], zp)));
        zp = F.mul(zp, z);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// ternary quintics
// ---------------------------------------------------------------------------

// Slot layout (z-degree descending, x-degree descending within a layer).
inline constexpr int kQuinticSlots = 21;
inline constexpr std::array<std::array<int, 3>, kQuinticSlots> kQuinticMonomials{{
    // {x, y, z} exponents
    {0, 0, 5},
    {1, 0, 4}, {0, 1, 4},
    {2, 0, 3}, {1, 1, 3}, {0, 2, 3},
    {3, 0, 2}, {2, 1, 2}, {1, 2, 2}, {0, 3, 2},
    {4, 0, 1}, {3, 1, 1}, {2, 2, 1}, {1, 3, 1}, {0, 4, 1},
    {5, 0, 0}, {4, 1, 0}, {3, 2, 0}, {2, 3, 0}, {1, 4, 0}, {0, 5, 0},
}};

inline constexpr int quintic_slot(int xe, int ye, int ze) {
    for (int s = 0; s < kQuinticSlots; ++s)
        if (kQuinticMonomials[s][0] == xe && kQuinticMonomials[s][1] == ye && kQuinticMonomials[s][2] == ze) return s;
    return -1;
}

struct TernaryQuintic {
    const FieldCtx* ctx = nullptr;
    std::array<Fe, kQuinticSlots> c{};

    TernaryQuintic() = default;
    explicit TernaryQuintic(const FieldCtx& f) : ctx(&f) { c.fill(f.zero()); }

    // k <= 3 shape: no z^5, x z^4, y z^4 terms.
    bool in_reduced_shape() const {
        return c[0] == ctx->zero() && c[1] == ctx->zero() && c[2] == ctx->zero();
    }

    friend bool operator==(const TernaryQuintic& a, const TernaryQuintic& b) { return a.c == b.c; }
};

inline Fe eval_quintic(const TernaryQuintic& Q, Fe x, Fe y, Fe z) {
    const FieldCtx& F = *Q.ctx;
    std::array<Fe, 6> xp, yp, zp;
    xp[0] = yp[0] = zp[0] = F.one();
    for (int i = 1; i <= 5; ++i) {
        xp[i] = F.mul(xp[i - 1], x);
        yp[i] = F.mul(yp[i - 1], y);
        zp[i] = F.mul(zp[i - 1], z);
    }
    Fe acc = F.zero();
    for (int s = 0; s < kQuinticSlots; ++s) {
        if (Q.c[s] == F.zero()) continue;
        auto [xe, ye, ze] = kQuinticMonomials[s];
        acc = F.add(acc, F.mul(Q.c[s], F.mul(xp[xe], F.mul(yp[ye], zp[ze]))));
    }
    return acc;
}

namespace detail {

// dense degree-d trivariate forms, indexed by (xe, ye) with ze = d - xe - ye
struct TriForm {
    int deg = 0;
    std::vector<Fe> v;  // size (deg+1)(deg+2)/2

    int at(int xe, int ye) const { return xe * (2 * deg + 3 - xe) / 2 + ye; }
};

inline TriForm tri_zero(const FieldCtx& F, int d) {
    TriForm t;
    t.deg = d;
    t.v.assign((d + 1) * (d + 2) / 2, F.zero());
    return t;
}

inline TriForm tri_mul_linear(const FieldCtx& F, const TriForm& a, Fe lx, Fe ly, Fe lz) {
    TriForm r = tri_zero(F, a.deg + 1);
    for (int xe = 0; xe <= a.deg; ++xe)
        for (int ye = 0; xe + ye <= a.deg; ++ye) {
            Fe c = a.v[a.at(xe, ye)];
            if (c == F.zero()) continue;
            r.v[r.at(xe + 1, ye)] = F.add(r.v[r.at(xe + 1, ye)], F.mul(c, lx));
            r.v[r.at(xe, ye + 1)] = F.add(r.v[r.at(xe, ye + 1)], F.mul(c, ly));
            r.v[r.at(xe, ye)] = F.add(r.v[r.at(xe, ye)], F.mul(c, lz));
        }
    return r;
}

}  // namespace detail

// Exact substitution by M acting on the column (x, y, z); the result is a
// general quintic (all 21 slots may be populated).
inline TernaryQuintic act_gl3(const Mat3& M, const TernaryQuintic& Q) {
    const FieldCtx& F = *Q.ctx;
    if (M.det() == F.zero()) throw std::invalid_argument("singular coordinate change");
    // powers of the three image linear forms, degrees 0..5
    std::array<std::array<detail::TriForm, 6>, 3> pw;
    for (int r = 0; r < 3; ++r) {
        pw[r][0] = detail::tri_zero(F, 0);
        pw[r][0].v[0] = F.one();
        for (int d = 1; d <= 5; ++d)
            pw[r][d] = detail::tri_mul_linear(F, pw[r][d - 1], M.m[r][0], M.m[r][1], M.m[r][2]);
    }
    TernaryQuintic out(F);
    for (int s = 0; s < kQuinticSlots; ++s) {
        if (Q.c[s] == F.zero()) continue;
        auto [xe, ye, ze] = kQuinticMonomials[s];
        // product pw[0][xe] * pw[1][ye] * pw[2][ze], accumulated straight into out
        detail::TriForm prod = pw[0][xe];
        auto combine = [&](const detail::TriForm& a, const detail::TriForm& b) {
            detail::TriForm r = detail::tri_zero(F, a.deg + b.deg);
            for (int ax = 0; ax <= a.deg; ++ax)
                for (int ay = 0; ax + ay <= a.deg; ++ay) {
                    Fe ca = a.v[a.at(ax, ay)];
                    if (ca == F.zero()) continue;
                    for (int bx = 0; bx <= b.deg; ++bx)
                        for (int by = 0; bx + by <= b.deg; ++by) {
                            Fe cb = b.v[b.at(bx, by)];
                            if (cb == F.zero()) continue;
                            int rx = ax + bx, ry = ay + by;
                            r.v[r.at(rx, ry)] = F.add(r.v[r.at(rx, ry)], F.mul(ca, cb));
                        }
                }
            return r;
        };
        prod = combine(prod, pw[1][ye]);
        prod = combine(prod, pw[2][ze]);
        for (int rx = 0; rx <= 5; ++rx)
            for (int ry = 0; rx + ry <= 5; ++ry) {
                Fe cv = prod.v[prod.at(rx, ry)];
                if (cv == F.zero()) continue;
                int slot = quintic_slot(rx, ry, 5 - rx - ry);
                out.c[slot] = F.add(out.c[slot], F.mul(Q.c[s], cv));
            }
    }
    return out;
}

}  // namespace g5::forms
