// fixtures.hpp
//
// Reference data for the census suites: the known point-count-maximal
// quintic models over F3 (22 for counting over GF(9), 18 for GF(3)), their
// isomorphism-class partitions, the attached degree-10 Frobenius polynomials
// in factored form, and the spot-check hyperelliptic curves.

#pragma once

#include <array>
#include <vector>

#include "g5/hyperelliptic.hpp"
#include "g5/trigonal.hpp"
#include "oracles.hpp"

namespace fixtures {

using g5::trig::QuinticModel;
using g5::trig::SingType;

struct Term {
    int coef, xe, ye, ze;
};

inline QuinticModel quintic(SingType type, std::initializer_list<Term> terms) {
    QuinticModel m;
    m.type = type;
    for (const Term& t : terms) {
        int s = g5::forms::quintic_slot(t.xe, t.ye, t.ze);
        m.c[s] = static_cast<std::uint8_t>((m.c[s] + t.coef) % 3);
    }
    // normalize case id through the enumeration round trip
    QuinticModel canon = g5::trig::trigonal_model_at(g5::trig::trigonal_index_of(m));
    return canon;
}

// The 22 models whose normalizations attain 30 points over GF(9).
// Transcription notes (all four confirmed by re-running the census): in #1
// the y^3 z^2 coefficient is 2, in #6 a stray z^2 inside the z^2-layer
// parenthesis was dropped, in #12 the '+' before the x^2y^2z term was
// restored, and in #19 the z on the third parenthesis was restored.
inline const std::vector<QuinticModel>& max_quintics_f9() {
    using enum SingType;
    static const std::vector<QuinticModel> v = {
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,1,2,2},{2,0,3,2}, {1,1,3,1}, {1,5,0,0},{1,3,2,0},{1,2,3,0},{1,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{2,1,2,2},{1,0,3,2}, {2,2,2,1},{2,1,3,1},
                        {1,5,0,0},{2,4,1,0},{1,2,3,0},{2,1,4,0},{1,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,1,2,2},{2,0,3,2}, {1,2,2,1},{1,1,3,1},{2,0,4,1},
                        {1,5,0,0},{1,3,2,0},{2,2,3,0},{2,1,4,0},{1,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,1,2,2},{1,0,3,2}, {1,1,3,1}, {1,5,0,0},{1,3,2,0},{2,2,3,0},{2,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,1,2,2},{1,0,3,2}, {2,2,2,1},{1,1,3,1},{1,0,4,1},
                        {1,5,0,0},{1,3,2,0},{1,2,3,0},{2,1,4,0},{2,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{2,1,2,2},{2,0,3,2}, {1,2,2,1},{2,1,3,1},
                        {1,5,0,0},{1,4,1,0},{2,2,3,0},{2,1,4,0},{2,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,2,1,2},{1,0,3,2}, {2,2,2,1},{2,1,3,1},
                        {1,5,0,0},{2,4,1,0},{2,2,3,0},{1,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,2,1,2},{2,0,3,2}, {2,2,2,1},{2,0,4,1},
                        {1,5,0,0},{1,4,1,0},{1,1,4,0},{1,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,2,1,2},{1,0,3,2}, {2,2,2,1},{2,0,4,1},
                        {2,5,0,0},{1,3,2,0},{2,2,3,0},{1,1,4,0},{2,0,5,0}}),
        quintic(split, {{1,1,1,3}, {1,3,0,2},{1,2,1,2},{2,1,2,2},{2,0,3,2}, {2,2,2,1},
                        {1,5,0,0},{1,4,1,0},{2,1,4,0},{2,0,5,0}}),
        quintic(nonsplit, {{1,2,0,3},{1,0,2,3}, {1,3,0,2},{1,1,2,2},{1,3,0,2},{1,0,3,2}, {1,2,2,1},
                           {2,5,0,0},{2,4,1,0},{1,3,2,0},{1,0,5,0}}),
        quintic(nonsplit, {{1,2,0,3},{1,0,2,3}, {2,3,0,2},{2,1,2,2},{2,3,0,2},{1,0,3,2}, {1,2,2,1},
                           {1,5,0,0},{2,4,1,0},{2,3,2,0},{1,0,5,0}}),
        quintic(nonsplit, {{1,2,0,3},{1,0,2,3}, {2,3,0,2},{2,1,2,2},{1,3,0,2},{1,0,3,2}, {1,4,0,1},{1,3,1,1},
                           {1,5,0,0},{2,2,3,0},{1,0,5,0}}),
        quintic(nonsplit, {{1,2,0,3},{1,0,2,3}, {1,3,0,2},{1,1,2,2},{2,3,0,2},{1,0,3,2}, {1,4,0,1},{2,3,1,1},
                           {2,5,0,0},{2,2,3,0},{1,0,5,0}}),
        quintic(nonsplit, {{1,2,0,3},{1,0,2,3}, {1,3,0,2},{1,1,2,2},{1,0,3,2}, {2,3,1,1},{2,2,2,1},
                           {1,5,0,0},{1,4,1,0},{1,3,2,0},{2,2,3,0},{1,0,5,0}}),
        quintic(nonsplit, {{1,2,0,3},{1,0,2,3}, {2,3,0,2},{2,1,2,2},{1,0,3,2}, {1,3,1,1},{2,2,2,1},
                           {2,5,0,0},{1,4,1,0},{2,3,2,0},{2,2,3,0},{1,0,5,0}}),
        quintic(nonsplit, {{1,2,0,3},{1,0,2,3}, {1,3,0,2},{1,1,2,2},{2,3,0,2}, {1,4,0,1},{1,0,4,1},
                           {1,5,0,0}}),
        quintic(cusp, {{1,2,0,3}, {1,2,1,2},{1,0,3,2}, {1,4,0,1},{2,2,2,1}, {1,4,1,0},{1,0,5,0}}),
        quintic(cusp, {{1,2,0,3}, {1,2,1,2},{2,0,3,2}, {2,4,0,1},{2,2,2,1}, {2,4,1,0},{2,0,5,0}}),
        quintic(cusp, {{1,2,0,3}, {1,2,1,2},{2,0,3,2}, {1,4,0,1},{1,3,1,1},{2,2,2,1},
                       {1,5,0,0},{2,3,2,0},{2,2,3,0},{1,1,4,0},{2,0,5,0}}),
        quintic(cusp, {{1,2,0,3}, {1,2,1,2},{2,0,3,2}, {1,4,0,1},{2,3,1,1},{2,2,2,1},
                       {2,5,0,0},{1,3,2,0},{2,2,3,0},{2,1,4,0},{2,0,5,0}}),
        quintic(cusp, {{1,2,0,3}, {1,3,0,2},{1,2,1,2},{1,0,3,2}, {2,3,1,1},{2,2,2,1},
                       {1,5,0,0},{2,3,2,0},{1,2,3,0},{1,1,4,0},{1,0,5,0}}),
    };
    return v;
}

// The 18 models whose normalizations attain 12 points over GF(3):
// 15 split (all sharing the z^2 layer x^3 + x^2y + 2xy^2 + 2y^3), 3 cusp.
inline const std::vector<QuinticModel>& max_quintics_f3() {
    static const std::vector<QuinticModel> v = [] {
        std::vector<QuinticModel> out;
        auto split_model = [](std::initializer_list<Term> rest) {
            std::vector<Term> terms = {{1,1,1,3}, {1,3,0,2},{1,2,1,2},{2,1,2,2},{2,0,3,2}};
            terms.insert(terms.end(), rest.begin(), rest.end());
            QuinticModel m;
            m.type = SingType::split;
            for (const Term& t : terms) {
                int s = g5::forms::quintic_slot(t.xe, t.ye, t.ze);
                m.c[s] = static_cast<std::uint8_t>((m.c[s] + t.coef) % 3);
            }
            return g5::trig::trigonal_model_at(g5::trig::trigonal_index_of(m));
        };
        out.push_back(split_model({{2,2,2,1},{2,1,3,1},{1,0,4,1}, {2,5,0,0},{1,3,2,0}}));
        out.push_back(split_model({{1,2,2,1},{2,1,3,1},{2,0,4,1}, {2,5,0,0},{2,4,1,0},{1,3,2,0},{1,2,3,0}}));
        out.push_back(split_model({{2,2,2,1},{2,1,3,1},{1,0,4,1}, {2,5,0,0},{1,4,1,0},{1,3,2,0},{2,2,3,0}}));
        out.push_back(split_model({{1,2,2,1},{2,1,3,1},{2,0,4,1}, {2,5,0,0},{1,4,1,0},{1,3,2,0},{2,2,3,0}}));
        out.push_back(split_model({{1,2,2,1},{2,1,3,1},{2,0,4,1}, {2,5,0,0},{1,1,4,0}}));
        out.push_back(split_model({{2,2,2,1},{2,1,3,1},{1,0,4,1}, {2,5,0,0},{2,4,1,0},{1,2,3,0},{1,1,4,0}}));
        out.push_back(split_model({{1,2,2,1},{2,1,3,1},{2,0,4,1}, {2,5,0,0},{2,4,1,0},{1,2,3,0},{1,1,4,0}}));
        out.push_back(split_model({{2,2,2,1},{2,1,3,1},{1,0,4,1}, {2,5,0,0},{1,4,1,0},{2,2,3,0},{1,1,4,0}}));
        out.push_back(split_model({{2,2,2,1},{2,1,3,1},{1,0,4,1}, {2,5,0,0},{2,3,2,0},{2,1,4,0}}));
        out.push_back(split_model({{1,2,2,1},{2,1,3,1},{2,0,4,1}, {2,5,0,0},{2,4,1,0},{2,3,2,0},{1,2,3,0},{2,1,4,0}}));
        out.push_back(split_model({{2,1,3,1}, {2,5,0,0},{1,3,2,0},{2,2,3,0},{1,0,5,0}}));
        out.push_back(split_model({{2,1,3,1}, {2,5,0,0},{2,4,1,0},{1,1,4,0},{1,0,5,0}}));
        out.push_back(split_model({{2,1,3,1}, {2,5,0,0},{1,4,1,0},{1,2,3,0},{1,1,4,0},{1,0,5,0}}));
        out.push_back(split_model({{2,1,3,1}, {2,5,0,0},{2,2,3,0},{1,1,4,0},{1,0,5,0}}));
        out.push_back(split_model({{2,1,3,1}, {2,5,0,0},{1,4,1,0},{2,3,2,0},{1,2,3,0},{2,1,4,0},{1,0,5,0}}));
        out.push_back(quintic(SingType::cusp,
                              {{1,2,0,3}, {1,2,1,2},{2,0,3,2}, {2,4,0,1}, {2,2,3,0},{1,0,5,0}}));
        out.push_back(quintic(SingType::cusp,
                              {{1,2,0,3}, {1,2,1,2},{2,0,3,2}, {2,4,0,1}, {2,4,1,0},{2,3,2,0},{1,1,4,0},{1,0,5,0}}));
        out.push_back(quintic(SingType::cusp,
                              {{1,2,0,3}, {1,2,1,2},{2,0,3,2}, {2,4,0,1}, {2,4,1,0},{1,3,2,0},{2,1,4,0},{1,0,5,0}}));
        return out;
    }();
    return v;
}

// Isomorphism-class partitions (0-based indices into the lists above).
inline const std::vector<std::vector<int>>& classes_f9() {
    static const std::vector<std::vector<int>> v = {
        {0, 3, 8}, {1, 5, 7}, {2, 4, 6}, {9, 16}, {10, 11}, {12, 13}, {14, 15}, {17, 18, 19, 20, 21}};
    return v;
}

inline const std::vector<std::vector<int>>& classes_f3() {
    static const std::vector<std::vector<int>> v = {
        {0, 7}, {1, 12}, {2}, {3, 14}, {4, 10}, {5, 8}, {6, 13}, {9, 11}, {15, 16, 17}};
    return v;
}

// Frobenius polynomials over GF(9) attached to the eight classes, as integer
// coefficient vectors t^10 + a1 t^9 + ... + a10 (expanded from factored form
// with exact integer arithmetic). #4 and #8 coincide: seven distinct values.
inline std::vector<std::array<std::int64_t, 11>> weil_f9() {
    using oracles::zmul;
    using oracles::zpow;
    auto desc = [](std::vector<long long> asc) {
        std::array<std::int64_t, 11> out{};
        for (int i = 0; i <= 10; ++i) out[i] = asc[10 - i];
        return out;
    };
    std::vector<std::array<std::int64_t, 11>> w;
    w.push_back(desc(zmul(zpow({3, 1}, 4), {729, 648, 396, 149, 44, 8, 1})));
    w.push_back(desc(zmul({9, 5, 1}, {6561, 10935, 9072, 4941, 1927, 549, 112, 15, 1})));
    w.push_back(desc({59049, 131220, 142884, 101007, 51426, 19667, 5714, 1247, 196, 20, 1}));
    w.push_back(desc(zmul({9, 2, 1}, zpow({81, 81, 37, 9, 1}, 2))));
    w.push_back(desc({59049, 131220, 145800, 105219, 54270, 20843, 6030, 1299, 200, 20, 1}));
    w.push_back(desc(zmul(zmul(zpow({3, 1}, 2), {9, 5, 1}), {729, 729, 441, 177, 49, 9, 1})));
    w.push_back(desc({59049, 131220, 141426, 98010, 48897, 18539, 5433, 1210, 194, 20, 1}));
    w.push_back(desc(zmul({9, 2, 1}, zpow({81, 81, 37, 9, 1}, 2))));
    return w;
}

// Spot-check hyperelliptic curves.
inline const g5::hyper::HyperModel kHyperEx20a{1, 1, 0, {1, 2, 0, 0, 0, 1, 0, 2, 0, 0}};  // 20 points / GF(9)
inline const g5::hyper::HyperModel kHyperEx20b{1, 1, 0, {2, 0, 0, 2, 2, 0, 0, 0, 0, 0}};  // 20 points / GF(9)
inline const g5::hyper::HyperModel kHyperEx8a{1, 1, 0, {1, 2, 2, 0, 0, 0, 0, 0, 0, 0}};   // 8 points / GF(3)
inline const g5::hyper::HyperModel kHyperEx8b{1, 1, 0, {1, 1, 2, 1, 0, 0, 0, 0, 0, 0}};   // 8 points / GF(3)

// Frobenius polynomial of kHyperEx20a over GF(9): (t+3)^2 (t^2+9)^2 (t^2+2t+9)^2.
inline std::array<std::int64_t, 11> weil_hyper_ex1() {
    using oracles::zmul;
    using oracles::zpow;
    auto asc = zmul(zmul(zpow({3, 1}, 2), zpow({9, 0, 1}, 2)), zpow({9, 2, 1}, 2));
    std::array<std::int64_t, 11> out{};
    for (int i = 0; i <= 10; ++i) out[i] = asc[10 - i];
    return out;
}

// Frobenius polynomial of kHyperEx20b over GF(9), given in expanded form.
inline std::array<std::int64_t, 11> weil_hyper_ex2() {
    return {1, 10, 51, 212, 837, 2810, 7533, 17172, 37179, 65610, 59049};
}

}  // namespace fixtures
