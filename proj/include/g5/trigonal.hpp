// trigonal.hpp
//
// Genus-5 trigonal curves over F3 as singular plane quintics
//
//     F = q(x,y) z^3 + f2(x,y) z^2 + f1(x,y) z + f0(x,y),
//
// where q is xy (split node), x^2 + y^2 (non-split node, i.e. x^2 - eps y^2
// with eps = 2) or x^2 (cusp), and the lower layers run through the reduced
// coefficient families of the three singularity types. The only singular
// point of a valid model is (0:0:1).
//
// Counting works fiber-wise over the projection away from (0:0:1): the point
// (0:0:1) itself plus, for every (x:y) in P^1, the number of roots in z of
// the fiber cubic. The normalization count corrects the node contribution:
// +1 when the node splits over the counting field, -1 when it does not, 0 for
// a cusp. Validity (genus exactly 5) is the statement that the singular locus
// is exactly {(0:0:1)}; scanning GF(3^4), GF(3^5) and GF(3^6) is exhaustive
// because every singular point of a reduced quintic has degree at most 6 over
// F3, and each d <= 6 divides 4, 5 or 6.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "g5/field.hpp"
#include "g5/forms.hpp"

namespace g5::trig {

using ff::Fe;
using ff::FieldCtx;
using forms::TernaryQuintic;

enum class SingType : std::uint8_t { split, nonsplit, cusp };

inline const char* sing_type_name(SingType t) {
    switch (t) {
        case SingType::split: return "split";
        case SingType::nonsplit: return "nonsplit";
        case SingType::cusp: return "cusp";
    }
    return "?";
}

inline SingType sing_type_from_name(const std::string& s) {
    if (s == "split") return SingType::split;
    if (s == "nonsplit") return SingType::nonsplit;
    if (s == "cusp") return SingType::cusp;
    throw std::invalid_argument("unknown singularity type: " + s);
}

// Full quintic coefficient vector in the documented 21-slot monomial order;
// all model coefficients live in F3.
struct QuinticModel {
    SingType type = SingType::split;
    int case_id = 1;
    std::array<std::uint8_t, 21> c{};

    friend bool operator==(const QuinticModel&, const QuinticModel&) = default;
};

inline TernaryQuintic to_quintic(const QuinticModel& m, const FieldCtx& F) {
    TernaryQuintic Q(F);
    for (int s = 0; s < 21; ++s) Q.c[s] = F.from_base(m.c[s]);
    return Q;
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

// Non-split case 4 tail over (a6..a11): the first nonzero coefficient is
// normalized to 1 (ranks 0..363, leading blocks first, later digits counting
// fastest), plus the all-zero tail at rank 364. The all-zero tail yields
// z | F and is rejected by validation; it is enumerated so that validation,
// not the enumerator, is the arbiter for the unproved corner of the family.
inline constexpr std::uint32_t kNs4TailCount = 365;

inline std::array<std::uint8_t, 6> ns4_tail(std::uint32_t rank) {
    std::array<std::uint8_t, 6> t{};
    std::uint32_t block = 243;  // free digits after the leading 1
    for (int lead = 0; lead < 6; ++lead) {
        if (rank < block) {
            t[lead] = 1;
            for (int j = 5; j > lead; --j, rank /= 3) t[j] = static_cast<std::uint8_t>(rank % 3);
            return t;
        }
        rank -= block;
        block /= 3;
    }
    return t;  // rank 364: all zero
}

struct TrigCase {
    SingType type;
    int case_id;
    std::uint64_t count;
};

inline const std::vector<TrigCase>& trigonal_cases() {
    static const std::vector<TrigCase> cases = {
        {SingType::split, 1, 2ull * 177147},         // a2 in {0,1}; 11 free slots
        {SingType::split, 2, 2ull * 59049},          // a3 in {0,1}; 10 free
        {SingType::split, 3, 2ull * 19683},          // a4 in {0,1}; 9 free
        {SingType::split, 4, 19683},                 // 9 free
        {SingType::split, 5, 3ull * 2 * 6561},       // a6 in F3, a7 in {0,1}; 8 free
        {SingType::nonsplit, 1, 177147},             // 11 free
        {SingType::nonsplit, 2, 59049},              // 10 free
        {SingType::nonsplit, 3, 19683},              // 9 free
        {SingType::nonsplit, 4, 243ull * kNs4TailCount},
        {SingType::cusp, 1, 2ull * 2 * 3 * 2 * 19683},  // b1,b2 in {0,1}, a2 nonzero
    };
    return cases;
}

inline std::uint64_t trigonal_total() {
    std::uint64_t n = 0;
    for (const auto& c : trigonal_cases()) n += c.count;
    return n;
}

namespace detail {

// digit helpers: slots decode lowest subscript fastest
inline int take3(std::uint64_t& v) {
    int d = static_cast<int>(v % 3);
    v /= 3;
    return d;
}
inline int take2(std::uint64_t& v) {
    int d = static_cast<int>(v % 2);
    v /= 2;
    return d;
}

}  // namespace detail

// Local decode within one (type, case) family; slot order is ascending
// coefficient subscript, lowest subscript counting fastest.
inline QuinticModel trigonal_model_at_case(SingType type, int case_id, std::uint64_t v) {
    using detail::take2;
    using detail::take3;
    QuinticModel m;
    m.type = type;
    m.case_id = case_id;
    auto& c = m.c;
    if (type == SingType::split) {
        c[4] = 1;  // xy z^3
        switch (case_id) {
            case 1: {
                c[6] = 1;
                c[7] = static_cast<std::uint8_t>(take2(v));
                c[8] = static_cast<std::uint8_t>(take3(v));
                c[9] = static_cast<std::uint8_t>(take3(v));
                c[12] = static_cast<std::uint8_t>(take3(v));
                c[13] = static_cast<std::uint8_t>(take3(v));
                c[14] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
            case 2: {
                c[7] = 1;
                c[8] = static_cast<std::uint8_t>(take2(v));
                c[9] = static_cast<std::uint8_t>(take3(v));
                c[10] = static_cast<std::uint8_t>(take3(v));
                c[13] = static_cast<std::uint8_t>(take3(v));
                c[14] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
            case 3: {
                c[8] = 1;
                c[9] = static_cast<std::uint8_t>(take2(v));
                c[10] = static_cast<std::uint8_t>(take3(v));
                c[11] = static_cast<std::uint8_t>(take3(v));
                c[14] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
            case 4: {
                c[9] = 1;
                c[10] = static_cast<std::uint8_t>(take3(v));
                c[11] = static_cast<std::uint8_t>(take3(v));
                c[12] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
            case 5: {
                c[10] = static_cast<std::uint8_t>(take3(v));
                c[11] = static_cast<std::uint8_t>(take3(v));       // a6 in {0,1,zeta}; zeta = 2 in F3
                c[12] = static_cast<std::uint8_t>(take2(v));       // a7 in {0,1}
                c[13] = static_cast<std::uint8_t>(take3(v));
                c[14] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
        }
    } else if (type == SingType::nonsplit) {
        c[3] = 1;  // x^2 z^3
        c[5] = 1;  // + y^2 z^3 (eps = 2, so -eps = 1)
        switch (case_id) {
            case 1: {
                int a1 = take3(v), a2 = take3(v);
                c[6] = static_cast<std::uint8_t>((a1 + a2) % 3);
                c[8] = static_cast<std::uint8_t>(a1);
                c[9] = 1;
                c[10] = static_cast<std::uint8_t>(take3(v));
                c[11] = static_cast<std::uint8_t>(take3(v));
                c[12] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
            case 2: {
                int a1 = take3(v);
                c[6] = static_cast<std::uint8_t>((1 + a1) % 3);
                c[8] = 1;
                c[10] = static_cast<std::uint8_t>(take3(v));
                c[11] = static_cast<std::uint8_t>(take3(v));
                c[14] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
            case 3: {
                c[6] = 1;
                c[12] = static_cast<std::uint8_t>(take3(v));
                c[13] = static_cast<std::uint8_t>(take3(v));
                c[14] = static_cast<std::uint8_t>(take3(v));
                for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                return m;
            }
            case 4: {
                for (int s = 10; s <= 14; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
                auto tail = ns4_tail(static_cast<std::uint32_t>(v));
                for (int j = 0; j < 6; ++j) c[15 + j] = tail[j];
                return m;
            }
        }
    } else {
        c[3] = 1;  // x^2 z^3
        c[6] = static_cast<std::uint8_t>(take2(v));               // b1
        c[7] = static_cast<std::uint8_t>(take2(v));               // b2
        c[8] = static_cast<std::uint8_t>(take3(v));               // a1
        c[9] = static_cast<std::uint8_t>(1 + take2(v));           // a2 in {1,2}
        c[10] = static_cast<std::uint8_t>(take3(v));
        c[11] = static_cast<std::uint8_t>(take3(v));
        c[12] = static_cast<std::uint8_t>(take3(v));
        for (int s = 15; s <= 20; ++s) c[s] = static_cast<std::uint8_t>(take3(v));
        return m;
    }
    throw std::invalid_argument("unknown (type, case) pair");
}

inline QuinticModel trigonal_model_at(std::uint64_t index) {
    for (const auto& cs : trigonal_cases()) {
        if (index < cs.count) return trigonal_model_at_case(cs.type, cs.case_id, index);
        index -= cs.count;
    }
    throw std::out_of_range("trigonal enumeration index out of range");
}

// Inverse of the decoder: recovers the enumeration index of a model whose
// coefficient vector lies in one of the reduced families.
inline std::uint64_t trigonal_index_of(const QuinticModel& m) {
    const auto& c = m.c;
    auto bad = [&]() -> std::uint64_t { throw std::invalid_argument("model is not in a reduced family"); };

    std::uint64_t v = 0;
    int case_id = 0;
    auto push3 = [&](int val) { v = v * 3 + static_cast<std::uint64_t>(val); };
    auto push2 = [&](int val) { v = v * 2 + static_cast<std::uint64_t>(val); };

    if (m.type == SingType::split) {
        if (c[3] != 0 || c[4] != 1 || c[5] != 0) return bad();
        if (c[6] == 1) {
            case_id = 1;
            if (c[7] > 1 || c[10] != 0 || c[11] != 0) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[14]);
            push3(c[13]);
            push3(c[12]);
            push3(c[9]);
            push3(c[8]);
            push2(c[7]);
        } else if (c[6] == 0 && c[7] == 1) {
            case_id = 2;
            if (c[8] > 1 || c[11] != 0 || c[12] != 0) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[14]);
            push3(c[13]);
            push3(c[10]);
            push3(c[9]);
            push2(c[8]);
        } else if (c[6] == 0 && c[7] == 0 && c[8] == 1) {
            case_id = 3;
            if (c[9] > 1 || c[12] != 0 || c[13] != 0) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[14]);
            push3(c[11]);
            push3(c[10]);
            push2(c[9]);
        } else if (c[6] == 0 && c[7] == 0 && c[8] == 0 && c[9] == 1) {
            case_id = 4;
            if (c[13] != 0 || c[14] != 0) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[12]);
            push3(c[11]);
            push3(c[10]);
        } else if (c[6] == 0 && c[7] == 0 && c[8] == 0 && c[9] == 0) {
            case_id = 5;
            if (c[12] > 1) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[14]);
            push3(c[13]);
            push2(c[12]);
            push3(c[11]);
            push3(c[10]);
        } else {
            return bad();
        }
    } else if (m.type == SingType::nonsplit) {
        if (c[3] != 1 || c[4] != 0 || c[5] != 1) return bad();
        if (c[9] == 1) {
            case_id = 1;
            int a1 = c[8], a2 = (3 + c[6] - a1) % 3;
            if (c[7] != 0 || c[13] != 0 || c[14] != 0) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[12]);
            push3(c[11]);
            push3(c[10]);
            push3(a2);
            push3(a1);
        } else if (c[9] == 0 && c[8] == 1) {
            case_id = 2;
            int a1 = (3 + c[6] - 1) % 3;
            if (c[7] != 0 || c[12] != 0 || c[13] != 0) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[14]);
            push3(c[11]);
            push3(c[10]);
            push3(a1);
        } else if (c[9] == 0 && c[8] == 0 && c[7] == 0 && c[6] == 1) {
            case_id = 3;
            if (c[10] != 0 || c[11] != 0) return bad();
            for (int s = 20; s >= 15; --s) push3(c[s]);
            push3(c[14]);
            push3(c[13]);
            push3(c[12]);
        } else if (c[6] == 0 && c[7] == 0 && c[8] == 0 && c[9] == 0) {
            case_id = 4;
            // tail rank from (a6..a11)
            int lead = 0;
            while (lead < 6 && c[15 + lead] == 0) ++lead;
            std::uint32_t rank;
            if (lead < 6) {
                if (c[15 + lead] != 1) return bad();
                std::uint32_t skip = 0, block = 243;
                for (int j = 0; j < lead; ++j) {
                    skip += block;
                    block /= 3;
                }
                std::uint32_t digits = 0;
                for (int j = lead + 1; j < 6; ++j) digits = digits * 3 + c[15 + j];
                rank = skip + digits;
            } else {
                rank = kNs4TailCount - 1;
            }
            v = rank;
            for (int s = 14; s >= 10; --s) push3(c[s]);
        } else {
            return bad();
        }
    } else {
        if (c[3] != 1 || c[4] != 0 || c[5] != 0) return bad();
        if (c[6] > 1 || c[7] > 1 || c[9] == 0 || c[13] != 0 || c[14] != 0) return bad();
        case_id = 1;
        for (int s = 20; s >= 15; --s) push3(c[s]);
        push3(c[12]);
        push3(c[11]);
        push3(c[10]);
        push2(c[9] - 1);
        push3(c[8]);
        push2(c[7]);
        push2(c[6]);
    }

    std::uint64_t offset = 0;
    for (const auto& cs : trigonal_cases()) {
        if (cs.type == m.type && cs.case_id == case_id) {
            if (v >= cs.count) throw std::invalid_argument("model is not in a reduced family");
            return offset + v;
        }
        offset += cs.count;
    }
    throw std::logic_error("case not registered");
}

// ---------------------------------------------------------------------------
// layer views and fiber evaluation
// ---------------------------------------------------------------------------

namespace detail {

// layer l (z-degree 3-l): degree, offset into the 21-slot vector
inline constexpr std::array<std::pair<int, int>, 4> kLayers{{{2, 3}, {3, 6}, {4, 10}, {5, 15}}};

// Evaluate the degree-d binary form with F3 coefficients coeff[off..off+d]
// (x-degree descending) at (x-hat, 1), given packed powers of x-hat.
inline std::uint32_t eval_layer_packed(const std::array<std::uint8_t, 21>& c, int deg, int off,
                                       const std::uint64_t* pow) {
    std::uint64_t acc = 0;
    for (int j = 0; j <= deg; ++j) {
        std::uint8_t v = c[off + j];
        if (v == 0) continue;
        acc = ff::FieldCtx::lane_add(acc, pow[deg - j]);
        if (v == 2) acc = ff::FieldCtx::lane_add(acc, pow[deg - j]);
    }
    return ff::FieldCtx::unpack(acc);
}

}  // namespace detail

// Context-bound fiber counter with Frobenius-orbit reduction and, for the
// sweep fields GF(3) and GF(9), a full lookup table of cubic root counts.
class TrigCounter {
public:
    explicit TrigCounter(int e) : ctx_(&ff::get_field(e)) {
        for (auto [rep, size] : ctx_->frobenius_orbits()) {
            FiberRep r;
            r.weight = size;
            std::uint32_t p = 1;
            for (int i = 0; i <= 5; ++i) {
                r.pow[i] = ctx_->pack(p);
                if (i < 5) p = ctx_->mul_idx(p, rep);
            }
            reps_.push_back(r);
        }
        std::uint32_t q = ctx_->order();
        if (q <= 9) {
            root_table_.resize(static_cast<std::size_t>(q) * q * q * q);
            std::vector<std::uint32_t> poly(4);
            for (std::uint32_t key = 0; key < root_table_.size(); ++key) {
                std::uint32_t k = key;
                for (int i = 0; i < 4; ++i, k /= q) poly[i] = k % q;
                root_table_[key] = static_cast<std::uint8_t>(ctx_->count_poly_roots_idx(poly));
            }
        }
    }

    const FieldCtx& ctx() const { return *ctx_; }

    // #V(F)(GF(3^e)): the point (0:0:1) plus root counts of the fiber cubics
    // over every (x:y) in P^1; an identically-zero fiber contributes q.
    long long count(const QuinticModel& m) const {
        long long total = 1;
        for (const FiberRep& r : reps_) {
            std::uint32_t c0 = detail::eval_layer_packed(m.c, 5, 15, r.pow.data());
            std::uint32_t c1 = detail::eval_layer_packed(m.c, 4, 10, r.pow.data());
            std::uint32_t c2 = detail::eval_layer_packed(m.c, 3, 6, r.pow.data());
            std::uint32_t c3 = detail::eval_layer_packed(m.c, 2, 3, r.pow.data());
            total += static_cast<long long>(r.weight) * roots(c0, c1, c2, c3);
        }
        // fiber through (1:0): x-pure coefficients
        total += roots(m.c[15], m.c[10], m.c[6], m.c[3]);
        return total;
    }

    int roots(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2, std::uint32_t c3) const {
        if (!root_table_.empty()) {
            std::uint32_t q = ctx_->order();
            return root_table_[((c3 * q + c2) * q + c1) * q + c0];
        }
        return ctx_->count_poly_roots_idx({c0, c1, c2, c3});
    }

private:
    struct FiberRep {
        std::uint32_t weight;
        std::array<std::uint64_t, 6> pow;
    };
    const FieldCtx* ctx_;
    std::vector<FiberRep> reps_;
    std::vector<std::uint8_t> root_table_;
};

inline const TrigCounter& get_trig_counter(int e) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<TrigCounter>> cache;
    if (e < 1 || e > 10) throw std::invalid_argument("counting supports extensions 1..10");
    std::lock_guard lock(mu);
    auto& slot = cache[e];
    if (!slot) slot = std::make_unique<TrigCounter>(e);
    return *slot;
}

inline long long count_plane_quintic(const QuinticModel& m, int e) { return get_trig_counter(e).count(m); }

// Node splitting over GF(3^e): a split node splits over every extension; the
// non-split tangent cone x^2 + y^2 factors exactly when -1 is a square, i.e.
// for even e; a cusp never contributes.
inline int normalization_correction(SingType t, int e) {
    switch (t) {
        case SingType::split: return 1;
        case SingType::nonsplit: return (e % 2 == 0) ? 1 : -1;
        case SingType::cusp: return 0;
    }
    return 0;
}

inline long long normalization_count(const QuinticModel& m, int e) {
    return count_plane_quintic(m, e) + normalization_correction(m.type, e);
}

// ---------------------------------------------------------------------------
// genus-5 validation: singular locus == {(0:0:1)}
// ---------------------------------------------------------------------------

namespace detail {

inline void trim_idx(std::vector<std::uint32_t>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<std::uint32_t> gcd_idx(const FieldCtx& F, std::vector<std::uint32_t> a,
                                          std::vector<std::uint32_t> b) {
    trim_idx(a);
    trim_idx(b);
    while (!b.empty()) {
        // a mod b
        std::uint32_t lead_inv = F.index_of(F.inv(F.from_index(b.back())));
        while (a.size() >= b.size()) {
            std::uint32_t s = F.mul_idx(a.back(), lead_inv);
            if (s != 0) {
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i + 1 < b.size(); ++i)
                    a[shift + i] = F.add_idx(a[shift + i], F.neg_idx(F.mul_idx(s, b[i])));
            }
            a.pop_back();
            trim_idx(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

}  // namespace detail

// Singular-locus scanner for one extension field; fibers are walked through
// Frobenius-orbit representatives (a singular point on a conjugate fiber has
// a conjugate singular point with the same field of definition).
class TrigValidator {
public:
    explicit TrigValidator(int e) : ctx_(&ff::get_field(e)) {
        for (auto [rep, size] : ctx_->frobenius_orbits()) {
            std::array<std::uint64_t, 6> pow;
            std::uint32_t p = 1;
            for (int i = 0; i <= 5; ++i) {
                pow[i] = ctx_->pack(p);
                if (i < 5) p = ctx_->mul_idx(p, rep);
            }
            reps_.push_back(pow);
        }
    }

    // true iff some point other than (0:0:1) kills all three partial
    // derivatives over this field (the quintic itself vanishes there too, by
    // the Euler relation in characteristic 3 for degree 5)
    bool has_extra_singularity(const QuinticModel& m) const {
        const FieldCtx& F = *ctx_;
        // partial-derivative layer forms over F3, x-degree descending
        std::array<std::array<std::uint8_t, 6>, 4> lx{}, ly{};
        std::array<int, 4> ldeg{};
        for (int l = 0; l < 4; ++l) {
            auto [d, off] = detail::kLayers[l];
            ldeg[l] = d - 1;
            for (int j = 0; j < d; ++j) {
                lx[l][j] = static_cast<std::uint8_t>(m.c[off + j] * (d - j) % 3);
                ly[l][j] = static_cast<std::uint8_t>(m.c[off + j + 1] * (j + 1) % 3);
            }
        }
        // F_z = 2 f2 z + f1 (the z^3 layer drops out in characteristic 3)
        std::array<std::uint8_t, 6> fz1{};  // 2 f2
        for (int j = 0; j <= 3; ++j) fz1[j] = static_cast<std::uint8_t>(m.c[6 + j] * 2 % 3);

        auto fiber_singular = [&](auto value_at) -> bool {
            // cubic coefficient vectors in z for F_x, F_y; linear for F_z
            std::vector<std::uint32_t> px{value_at(ldeg[3], lx[3].data()), value_at(ldeg[2], lx[2].data()),
                                          value_at(ldeg[1], lx[1].data()), value_at(ldeg[0], lx[0].data())};
            std::vector<std::uint32_t> py{value_at(ldeg[3], ly[3].data()), value_at(ldeg[2], ly[2].data()),
                                          value_at(ldeg[1], ly[1].data()), value_at(ldeg[0], ly[0].data())};
            std::vector<std::uint32_t> pz{value_at(4, m.c.data() + 10), value_at(3, fz1.data())};
            detail::trim_idx(px);
            detail::trim_idx(py);
            detail::trim_idx(pz);
            std::vector<std::uint32_t> g = std::move(pz);
            if (g.empty()) g = std::move(px);
            else {
                g = detail::gcd_idx(F, std::move(g), std::move(px));
                if (g.size() == 1) return false;
            }
            if (g.empty()) g = std::move(py);
            else {
                g = detail::gcd_idx(F, std::move(g), std::move(py));
                if (g.size() == 1) return false;
            }
            if (g.empty()) return true;  // all partials vanish on the whole fiber
            if (g.size() == 1) return false;
            return F.count_poly_roots_idx(g) > 0;
        };

        for (const auto& pow : reps_) {
            auto value = [&](int deg, const std::uint8_t* coeffs) -> std::uint32_t {
                std::uint64_t acc = 0;
                for (int j = 0; j <= deg; ++j) {
                    if (coeffs[j] == 0) continue;
                    acc = ff::FieldCtx::lane_add(acc, pow[deg - j]);
                    if (coeffs[j] == 2) acc = ff::FieldCtx::lane_add(acc, pow[deg - j]);
                }
                return ff::FieldCtx::unpack(acc);
            };
            if (fiber_singular(value)) return true;
        }
        // fiber through (1:0): the x-pure coefficient of each form
        auto value_inf = [&](int, const std::uint8_t* coeffs) -> std::uint32_t { return coeffs[0]; };
        return fiber_singular(value_inf);
    }

private:
    const FieldCtx* ctx_;
    std::vector<std::array<std::uint64_t, 6>> reps_;
};

inline const TrigValidator& get_trig_validator(int e) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<TrigValidator>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[e];
    if (!slot) slot = std::make_unique<TrigValidator>(e);
    return *slot;
}

// Singular locus is exactly {(0:0:1)} across GF(3^4), GF(3^5), GF(3^6); every
// possible extra singular point is defined over one of these fields.
inline bool validate_genus5(const QuinticModel& m) {
    for (int e : {4, 5, 6})
        if (get_trig_validator(e).has_extra_singularity(m)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// isomorphism over k in {GF(3), GF(9)}
// ---------------------------------------------------------------------------

namespace detail {

// binary forms over k as index vectors, x-degree descending, fixed degree
using BForm = std::vector<std::uint32_t>;

inline BForm layer_of(const FieldCtx& k, const QuinticModel& m, int l) {
    auto [d, off] = kLayers[l];
    BForm out(d + 1);
    for (int j = 0; j <= d; ++j) out[j] = k.index_of(k.from_base(m.c[off + j]));
    return out;
}

// substitution x -> a x + b y, y -> c x + d y on a degree-d form
inline BForm sub_binary(const FieldCtx& k, const BForm& f, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                        std::uint32_t d) {
    int deg = static_cast<int>(f.size()) - 1;
    // powers of the two image linear forms
    std::vector<BForm> pa(deg + 1), pc(deg + 1);
    pa[0] = {1};
    pc[0] = {1};
    for (int i = 1; i <= deg; ++i) {
        pa[i].assign(i + 1, 0);
        pc[i].assign(i + 1, 0);
        for (int j = 0; j < i; ++j) {
            pa[i][j] = k.add_idx(pa[i][j], k.mul_idx(pa[i - 1][j], a));
            pa[i][j + 1] = k.add_idx(pa[i][j + 1], k.mul_idx(pa[i - 1][j], b));
            pc[i][j] = k.add_idx(pc[i][j], k.mul_idx(pc[i - 1][j], c));
            pc[i][j + 1] = k.add_idx(pc[i][j + 1], k.mul_idx(pc[i - 1][j], d));
        }
    }
    BForm out(deg + 1, 0);
    for (int j = 0; j <= deg; ++j) {
        if (f[j] == 0) continue;
        int di = deg - j;  // exponent of x in the source monomial
        // (a x + b y)^di * (c x + d y)^j; power-table index s is the
        // y-exponent, so the product lands at slot s + t
        for (int s = 0; s <= di; ++s) {
            std::uint32_t va = pa[di][s];
            if (va == 0) continue;
            std::uint32_t base = k.mul_idx(f[j], va);
            for (int t = 0; t <= j; ++t) {
                std::uint32_t vc = pc[j][t];
                if (vc == 0) continue;
                int ys = s + t;
                out[ys] = k.add_idx(out[ys], k.mul_idx(base, vc));
            }
        }
    }
    return out;
}

inline BForm scale_form(const FieldCtx& k, const BForm& f, std::uint32_t s) {
    BForm out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = k.mul_idx(f[i], s);
    return out;
}

// f * (u x + v y), degree rises by one
inline BForm mul_linear(const FieldCtx& k, const BForm& f, std::uint32_t u, std::uint32_t v) {
    BForm out(f.size() + 1, 0);
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0) continue;
        out[j] = k.add_idx(out[j], k.mul_idx(f[j], u));
        out[j + 1] = k.add_idx(out[j + 1], k.mul_idx(f[j], v));
    }
    return out;
}

// ratio r with f = r * g, or 0 if the forms are not proportional (g == 0
// requires f == 0, reported as ratio "any": returns 1)
inline std::uint32_t proportionality(const FieldCtx& k, const BForm& f, const BForm& g) {
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (g[i] == 0) {
            if (f[i] != 0) return 0;
            continue;
        }
        std::uint32_t ri = k.mul_idx(f[i], k.index_of(k.inv(k.from_index(g[i]))));
        if (ri == 0) return 0;
        if (r == 0) r = ri;
        else if (r != ri) return 0;
    }
    return r == 0 ? 1 : r;
}

}  // namespace detail

// Exhaustive search over the stabilizer of (0:0:1) in GL3(k) (third column
// proportional to (0,0,1)^T): every isomorphism of validated models fixes the
// unique singular point, so nothing outside the stabilizer can carry F1 to a
// multiple of F2. The stabilizer element
//     x -> a x + b y, y -> c x + d y, z -> u x + v y + w z
// maps the layers to
//     z^3: w^3 qA           z^2: w^2 f2A
//     z^1: w (2(ux+vy) f2A + f1A)
//     z^0: qA (u^3 x^3 + v^3 y^3) + (ux+vy)^2 f2A + (ux+vy) f1A + f0A
// with qA, fiA the A-substituted layers, using (r+s)^3 = r^3 + s^3.
inline bool isomorphic(const QuinticModel& m1, const QuinticModel& m2, const FieldCtx& k) {
    if (k.degree() > 2) throw std::invalid_argument("isomorphism testing is over GF(3) or GF(9)");
    const std::uint32_t q = k.order();

    detail::BForm q1 = detail::layer_of(k, m1, 0), f2_1 = detail::layer_of(k, m1, 1),
                  f1_1 = detail::layer_of(k, m1, 2), f0_1 = detail::layer_of(k, m1, 3);
    detail::BForm q2 = detail::layer_of(k, m2, 0), f2_2 = detail::layer_of(k, m2, 1),
                  f1_2 = detail::layer_of(k, m2, 2), f0_2 = detail::layer_of(k, m2, 3);

    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
            for (std::uint32_t c = 0; c < q; ++c)
                for (std::uint32_t d = 0; d < q; ++d) {
                    if (k.add_idx(k.mul_idx(a, d), k.neg_idx(k.mul_idx(b, c))) == 0) continue;
                    detail::BForm qA = detail::sub_binary(k, q1, a, b, c, d);
                    std::uint32_t rho = detail::proportionality(k, qA, q2);
                    if (rho == 0) continue;
                    detail::BForm f2A = detail::sub_binary(k, f2_1, a, b, c, d);
                    detail::BForm f1A = detail::sub_binary(k, f1_1, a, b, c, d);
                    detail::BForm f0A = detail::sub_binary(k, f0_1, a, b, c, d);
                    for (std::uint32_t w = 1; w < q; ++w) {
                        std::uint32_t w2 = k.mul_idx(w, w);
                        std::uint32_t w3 = k.mul_idx(w2, w);
                        std::uint32_t lambda = k.mul_idx(rho, w3);
                        // z^2 layer: w^2 f2A == lambda f2_2
                        bool ok = true;
                        for (std::size_t i = 0; i < f2A.size() && ok; ++i)
                            ok = k.mul_idx(w2, f2A[i]) == k.mul_idx(lambda, f2_2[i]);
                        if (!ok) continue;
                        for (std::uint32_t u = 0; u < q; ++u)
                            for (std::uint32_t v = 0; v < q; ++v) {
                                // z^1 layer
                                detail::BForm lin = detail::mul_linear(k, f2A, k.add_idx(u, u), k.add_idx(v, v));
                                bool pass = true;
                                for (std::size_t i = 0; i < f1A.size() && pass; ++i) {
                                    std::uint32_t lhs = k.mul_idx(w, k.add_idx(lin[i], f1A[i]));
                                    pass = lhs == k.mul_idx(lambda, f1_2[i]);
                                }
                                if (!pass) continue;
                                // z^0 layer
                                std::uint32_t u3 = k.mul_idx(k.mul_idx(u, u), u);
                                std::uint32_t v3 = k.mul_idx(k.mul_idx(v, v), v);
                                detail::BForm z0(6, 0);
                                for (int i = 0; i <= 2; ++i) {
                                    z0[i] = k.add_idx(z0[i], k.mul_idx(qA[i], u3));          // qA * u^3 x^3
                                    z0[i + 3] = k.add_idx(z0[i + 3], k.mul_idx(qA[i], v3));  // qA * v^3 y^3
                                }
                                detail::BForm uvf2 = detail::mul_linear(k, detail::mul_linear(k, f2A, u, v), u, v);
                                detail::BForm uvf1 = detail::mul_linear(k, f1A, u, v);
                                for (int i = 0; i <= 5; ++i) {
                                    std::uint32_t t = k.add_idx(z0[i], k.add_idx(uvf2[i], k.add_idx(uvf1[i], f0A[i])));
                                    if (t != k.mul_idx(lambda, f0_2[i])) {
                                        pass = false;
                                        break;
                                    }
                                }
                                if (pass) return true;
                            }
                    }
                }
    return false;
}

// Reference search over all of GL3(k) with every scalar; used to pin the
// soundness of the stabilizer restriction in tests.
inline bool isomorphic_fullgl3(const QuinticModel& m1, const QuinticModel& m2, const FieldCtx& k) {
    TernaryQuintic Q1 = to_quintic(m1, k), Q2 = to_quintic(m2, k);
    std::uint32_t q = k.order();
    std::array<std::uint32_t, 9> e{};
    for (std::uint64_t code = 0; code < std::uint64_t(q) * q * q * q * q * q * q * q * q; ++code) {
        std::uint64_t v = code;
        for (int i = 0; i < 9; ++i, v /= q) e[i] = static_cast<std::uint32_t>(v % q);
        forms::Mat3 M(k, {{{k.from_index(e[0]), k.from_index(e[1]), k.from_index(e[2])},
                           {k.from_index(e[3]), k.from_index(e[4]), k.from_index(e[5])},
                           {k.from_index(e[6]), k.from_index(e[7]), k.from_index(e[8])}}});
        if (M.det() == k.zero()) continue;
        TernaryQuintic img = forms::act_gl3(M, Q1);
        for (std::uint32_t lv = 1; lv < q; ++lv) {
            Fe l = k.from_index(lv);
            bool match = true;
            for (int s = 0; s < 21 && match; ++s) match = img.c[s] == k.mul(l, Q2.c[s]);
            if (match) return true;
        }
    }
    return false;
}

}  // namespace g5::trig
