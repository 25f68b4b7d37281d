// zeta.hpp
//
// Weil polynomials of genus-5 curves: reconstruction from point counts over
// the first five extensions (Newton's identities plus the functional
// equation), count prediction from a polynomial, isogeny-class counting, and
// the Hasse-Weil bound as an exact integer comparison.
//
// W(t) = t^10 + a1 t^9 + ... + a10 with integer coefficients; the functional
// equation ties a_{10-i} = q^{5-i} a_i. All arithmetic is in signed 128-bit
// integers; nothing here touches floating point except the optional
// root-modulus diagnostic.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace g5::zeta {

using Int = __int128;

inline constexpr int kGenus = 5;
inline constexpr int kDegree = 2 * kGenus;

struct WeilPoly {
    std::int64_t q = 0;                    // base field order (3 or 9 in this project)
    std::array<Int, kDegree + 1> a{};      // a[0] = 1, a[k] multiplies t^(10-k)

    friend bool operator==(const WeilPoly& x, const WeilPoly& y) { return x.q == y.q && x.a == y.a; }

    bool functional_equation_holds() const {
        Int qp = 1;  // q^(5-i) for i = 4 down to 0
        for (int i = 4; i >= 0; --i) {
            qp *= q;
            if (a[kDegree - i] != qp * a[i]) return false;
        }
        return true;
    }

    std::array<std::int64_t, kDegree + 1> coeffs_i64() const {
        std::array<std::int64_t, kDegree + 1> r{};
        for (int i = 0; i <= kDegree; ++i) {
            if (a[i] > Int(INT64_MAX) || a[i] < Int(INT64_MIN)) throw std::overflow_error("weil coefficient overflow");
            r[i] = static_cast<std::int64_t>(a[i]);
        }
        return r;
    }
};

inline Int ipow(std::int64_t base, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Power sums p_e = 1 + q^e - N_e, then Newton's identities
// p_k + a1 p_{k-1} + ... + a_{k-1} p_1 + k a_k = 0 for a1..a5; the functional
// equation fills a6..a10.
inline WeilPoly weil_from_counts(std::int64_t q, const std::array<std::int64_t, kGenus>& counts) {
    if (q < 2) throw std::invalid_argument("base field order must be at least 2");
    WeilPoly w;
    w.q = q;
    w.a[0] = 1;
    std::array<Int, kGenus + 1> p{};
    for (int e = 1; e <= kGenus; ++e) p[e] = Int(1) + ipow(q, e) - counts[e - 1];
    for (int k = 1; k <= kGenus; ++k) {
        Int s = p[k];
        for (int i = 1; i < k; ++i) s += w.a[i] * p[k - i];
        if (s % k != 0) throw std::domain_error("counts are not power sums of a degree-10 polynomial");
        w.a[k] = -s / k;
    }
    Int qp = 1;
    for (int i = 4; i >= 0; --i) {
        qp *= q;
        w.a[kDegree - i] = qp * w.a[i];
    }
    return w;
}

// Extended Newton recurrence; N_e = 1 + q^e - p_e.
inline std::vector<std::int64_t> predict_counts(const WeilPoly& w, int e_max) {
    if (e_max < 1 || e_max > 10) throw std::invalid_argument("prediction range is 1..10");
    std::vector<Int> p(e_max + 1, 0);
    for (int k = 1; k <= e_max; ++k) {
        Int s = 0;
        for (int i = 1; i < k && i <= kDegree; ++i) s += w.a[i] * p[k - i];
        if (k <= kDegree) s += Int(k) * w.a[k];
        p[k] = -s;
    }
    std::vector<std::int64_t> counts(e_max);
    for (int e = 1; e <= e_max; ++e) {
        Int n = Int(1) + ipow(w.q, e) - p[e];
        counts[e - 1] = static_cast<std::int64_t>(n);
    }
    return counts;
}

// Number of distinct coefficient vectors; mixing base fields is an error.
inline int count_isogeny_classes(const std::vector<WeilPoly>& ws) {
    if (ws.empty()) return 0;
    std::set<std::array<std::int64_t, kDegree + 1>> seen;
    for (const auto& w : ws) {
        if (w.q != ws.front().q) throw std::invalid_argument("mixed base fields in isogeny count");
        seen.insert(w.coeffs_i64());
    }
    return static_cast<int>(seen.size());
}

// N <= q + 1 + 2 g sqrt(q), decided exactly over the integers.
inline bool hasse_weil_check(std::int64_t n, std::int64_t q_eff, int g = kGenus) {
    Int d = Int(n) - q_eff - 1;
    if (d <= 0) return true;
    return d * d <= Int(4) * g * g * q_eff;
}

namespace detail {

// integer polynomial helpers (ascending coefficients) for square-free
// deflation; coefficient growth is tamed by removing content each step
inline Int igcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline void iprimitive(std::vector<Int>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    Int g = 0;
    for (Int c : p) g = igcd(g, c);
    if (g > 1)
        for (Int& c : p) c /= g;
    if (!p.empty() && p.back() < 0)
        for (Int& c : p) c = -c;
}

// primitive gcd via pseudo-remainders
inline std::vector<Int> igcd_poly(std::vector<Int> a, std::vector<Int> b) {
    iprimitive(a);
    iprimitive(b);
    while (!b.empty()) {
        // pseudo-remainder of a by b
        while (a.size() >= b.size()) {
            Int lead = a.back(), bl = b.back();
            Int g = igcd(lead, bl);
            Int ma = bl / g, mb = lead / g;
            for (Int& c : a) c *= ma;
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= mb * b[i];
            while (!a.empty() && a.back() == 0) a.pop_back();
            iprimitive(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    iprimitive(a);
    return a;
}

// exact quotient (the divisor is known to divide)
inline std::vector<Int> idiv_poly(std::vector<Int> a, const std::vector<Int>& b) {
    std::vector<Int> q(a.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        Int c = a[k + b.size() - 1] / b.back();
        q[k] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
    }
    return q;
}

}  // namespace detail

// Diagnostic: all complex roots should sit on the circle |t| = sqrt(q).
// The polynomial is deflated to its square-free part first (repeated roots
// wreck the attainable accuracy of any iteration), then Durand-Kerner runs on
// the simple roots; the tolerance is absolute on the modulus.
inline bool roots_on_weil_circle(const WeilPoly& w, double tol = 1e-6) {
    using C = std::complex<double>;
    std::vector<Int> poly(kDegree + 1);
    for (int i = 0; i <= kDegree; ++i) poly[i] = w.a[kDegree - i];
    std::vector<Int> deriv(kDegree);
    for (int i = 1; i <= kDegree; ++i) deriv[i - 1] = Int(i) * poly[i];
    std::vector<Int> g = detail::igcd_poly(poly, deriv);
    std::vector<Int> sf = g.size() <= 1 ? poly : detail::idiv_poly(poly, g);

    int deg = static_cast<int>(sf.size()) - 1;
    std::vector<double> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = static_cast<double>(static_cast<long double>(sf[i]));
    auto eval = [&](C t) {
        C acc = 0;
        for (int i = deg; i >= 0; --i) acc = acc * t + C(c[i]);
        return acc;
    };
    std::vector<C> r(deg);
    double radius = std::sqrt(static_cast<double>(w.q));
    for (int i = 0; i < deg; ++i) r[i] = std::polar(radius * 1.1, 0.37 + 2 * M_PI * i / std::max(deg, 1));
    for (int it = 0; it < 600; ++it) {
        double moved = 0;
        for (int i = 0; i < deg; ++i) {
            C denom = c[deg];
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= (r[i] - r[j]);
            C step = eval(r[i]) / denom;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    for (int i = 0; i < deg; ++i)
        if (std::abs(std::abs(r[i]) - radius) > tol) return false;
    return true;
}

// Cosmetic factored rendering: peels monic integer factors of degree 1 and 2
// by exact trial division (quadratic factors with constant term q, the shape
// conjugate root pairs produce). The leftover cofactor prints unfactored.
inline std::string factored_display(const WeilPoly& w) {
    std::vector<std::vector<long long>> factors;
    auto coeffs = w.coeffs_i64();
    std::vector<long long> cur(coeffs.rbegin(), coeffs.rend());  // ascending

    auto try_divide = [&](const std::vector<long long>& d) {
        if (cur.size() < d.size()) return false;
        std::vector<long long> rem = cur;
        std::vector<long long> quot(cur.size() - d.size() + 1, 0);
        for (std::size_t k = quot.size(); k-- > 0;) {
            long long c = rem[k + d.size() - 1];
            quot[k] = c;
            if (c == 0) continue;
            for (std::size_t i = 0; i < d.size(); ++i) rem[k + i] -= c * d[i];
        }
        for (long long v : rem)
            if (v != 0) return false;
        cur = quot;
        return true;
    };

    long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(w.q))));
    for (bool progress = true; progress && cur.size() > 1;) {
        progress = false;
        for (long long a = -2 * s - 1; a <= 2 * s + 1 && cur.size() > 1; ++a)
            if (try_divide({a, 1})) {
                factors.push_back({a, 1});
                progress = true;
            }
        for (long long a = -2 * s; a <= 2 * s && cur.size() > 2; ++a)
            if (try_divide({w.q, a, 1})) {
                factors.push_back({w.q, a, 1});
                progress = true;
            }
    }
    if (cur.size() > 1) factors.push_back(cur);
    std::sort(factors.begin(), factors.end(),
              [](const auto& x, const auto& y) { return x.size() != y.size() ? x.size() < y.size() : x < y; });

    auto poly_str = [](const std::vector<long long>& p) {
        std::string out;
        for (std::size_t i = p.size(); i-- > 0;) {
            long long c = p[i];
            if (c == 0) continue;
            if (!out.empty()) out += c > 0 ? " + " : " - ";
            else if (c < 0) out += "-";
            long long ac = c < 0 ? -c : c;
            if (ac != 1 || i == 0) out += std::to_string(ac);
            if (i >= 1) {
                if (ac != 1) out += "*";
                out += "t";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out.empty() ? std::string("0") : out;
    };

    std::string out;
    std::size_t i = 0;
    while (i < factors.size()) {
        std::size_t j = i;
        while (j < factors.size() && factors[j] == factors[i]) ++j;
        if (!out.empty()) out += " ";
        out += "(" + poly_str(factors[i]) + ")";
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

}  // namespace g5::zeta
