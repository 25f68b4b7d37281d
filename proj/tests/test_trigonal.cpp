#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "g5/trigonal.hpp"
#include "g5/zeta.hpp"
#include "oracles.hpp"

using namespace g5::trig;
using g5::ff::FieldCtx;
using g5::ff::get_field;

namespace {

QuinticModel random_model(std::mt19937& rng) {
    return trigonal_model_at(rng() % trigonal_total());
}

}  // namespace

TEST_CASE("case catalogue sizes") {
    const auto& cases = trigonal_cases();
    REQUIRE(cases.size() == 10);
    CHECK(cases[0].count == 354294);  // split 1: a2 binary, 11 free ternary slots
    CHECK(cases[1].count == 118098);
    CHECK(cases[2].count == 39366);
    CHECK(cases[3].count == 19683);
    CHECK(cases[4].count == 39366);
    CHECK(cases[5].count == 177147);
    CHECK(cases[6].count == 59049);
    CHECK(cases[7].count == 19683);
    CHECK(cases[8].count == 88695);   // 3^5 heads times 365 tails
    CHECK(cases[9].count == 472392);
    CHECK(trigonal_total() == 1387773);

    // split case 1 by exhaustion: distinct coefficient vectors, a2 in {0,1},
    // x^4 z and x^3 y z slots forced to zero
    std::set<std::array<std::uint8_t, 21>> seen;
    for (std::uint64_t i = 0; i < cases[0].count; ++i) {
        QuinticModel m = trigonal_model_at_case(SingType::split, 1, i);
        CHECK(m.c[6] == 1);
        CHECK(m.c[7] <= 1);
        CHECK(m.c[10] == 0);
        CHECK(m.c[11] == 0);
        seen.insert(m.c);
    }
    CHECK(seen.size() == cases[0].count);
}

TEST_CASE("cusp stream always has a nonzero y^3 z^2 coefficient") {
    std::mt19937 rng(41);
    for (int t = 0; t < 5000; ++t) {
        QuinticModel m = trigonal_model_at_case(SingType::cusp, 1, rng() % 472392);
        CHECK(m.c[9] != 0);
    }
}

TEST_CASE("decode/encode round trip and fixture membership") {
    std::mt19937 rng(42);
    for (int t = 0; t < 4000; ++t) {
        std::uint64_t i = rng() % trigonal_total();
        QuinticModel m = trigonal_model_at(i);
        REQUIRE(trigonal_index_of(m) == i);
    }
    for (const auto& m : fixtures::max_quintics_f9()) {
        QuinticModel rt = trigonal_model_at(trigonal_index_of(m));
        REQUIRE(rt == m);
    }
    for (const auto& m : fixtures::max_quintics_f3()) {
        QuinticModel rt = trigonal_model_at(trigonal_index_of(m));
        REQUIRE(rt == m);
    }
    // non-split tails: all-zero tail is enumerated and z divides the quintic
    QuinticModel zero_tail = trigonal_model_at_case(SingType::nonsplit, 4, (kNs4TailCount - 1) * 243ull);
    for (int s = 15; s <= 20; ++s) CHECK(zero_tail.c[s] == 0);
    CHECK_FALSE(validate_genus5(zero_tail));
}

TEST_CASE("fiber counts: reference values and oracle agreement") {
    const auto& f9list = fixtures::max_quintics_f9();
    CHECK(count_plane_quintic(f9list[0], 2) == 29);
    CHECK(normalization_count(f9list[0], 2) == 30);

    const auto& f3list = fixtures::max_quintics_f3();
    CHECK(normalization_count(f3list[15], 1) == 12);  // cusp member

    std::mt19937 rng(43);
    for (int e : {1, 2}) {
        const FieldCtx& F = get_field(e);
        for (int t = 0; t < 600; ++t) {
            QuinticModel m = random_model(rng);
            long long naive = oracles::quintic_count_naive(F, to_quintic(m, F));
            REQUIRE(count_plane_quintic(m, e) == naive);
        }
    }
    // (0:0:1) always lies on V(F): no z^5 or z^4 monomials in any model
    for (int t = 0; t < 200; ++t) {
        QuinticModel m = random_model(rng);
        CHECK(m.c[0] == 0);
        CHECK(m.c[1] == 0);
        CHECK(m.c[2] == 0);
    }
}

TEST_CASE("normalization corrections by type and parity") {
    std::mt19937 rng(44);
    for (int t = 0; t < 50; ++t) {
        QuinticModel m = random_model(rng);
        for (int e : {1, 2, 3, 4}) {
            long long plain = count_plane_quintic(m, e);
            long long corrected = normalization_count(m, e);
            if (m.type == SingType::split) CHECK(corrected == plain + 1);
            if (m.type == SingType::cusp) CHECK(corrected == plain);
            if (m.type == SingType::nonsplit) CHECK(corrected == plain + (e % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("genus validation accepts the maximal models") {
    for (const auto& m : fixtures::max_quintics_f9()) CHECK(validate_genus5(m));
    for (const auto& m : fixtures::max_quintics_f3()) CHECK(validate_genus5(m));
}

TEST_CASE("genus validation rejects visible degenerations") {
    // f0 = f1 = 0 leaves z^2 | F and a one-dimensional singular locus
    QuinticModel m = trigonal_model_at_case(SingType::split, 1, 0);
    for (int s = 10; s <= 20; ++s) m.c[s] = 0;
    CHECK_FALSE(validate_genus5(m));
}

TEST_CASE("validation is consistent with a direct singular scan over GF(3) and GF(9)") {
    std::mt19937 rng(45);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
        QuinticModel m = random_model(rng);
        bool extra_rational_sing = false;
        for (int e : {1, 2}) {
            const FieldCtx& F = get_field(e);
            auto sings = oracles::singular_points_scan(F, to_quintic(m, F));
            for (const auto& p : sings)
                if (!(p[0] == 0 && p[1] == 0 && p[2] == 1)) extra_rational_sing = true;
        }
        if (extra_rational_sing) {
            ++checked;
            REQUIRE_FALSE(validate_genus5(m));
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("isomorphism: reflexivity and the reference pairs") {
    const FieldCtx& k9 = get_field(2);
    const auto& fx = fixtures::max_quintics_f9();
    CHECK(isomorphic(fx[0], fx[0], k9));
    CHECK(isomorphic(fx[0], fx[3], k9));        // same class
    CHECK_FALSE(isomorphic(fx[0], fx[1], k9));  // distinct classes
    CHECK(isomorphic(fx[9], fx[16], k9));       // split model meets non-split model
    CHECK(isomorphic(fx[17], fx[21], k9));      // cusp class of five
}

TEST_CASE("stabilizer search agrees with the full GL3 search over GF(3)") {
    const FieldCtx& k3 = get_field(1);
    const auto& fx = fixtures::max_quintics_f3();
    // known-isomorphic, known-distinct, and random validated pairs
    std::vector<std::pair<QuinticModel, QuinticModel>> pairs = {
        {fx[0], fx[7]}, {fx[0], fx[2]}, {fx[15], fx[16]}, {fx[1], fx[15]}};
    std::mt19937 rng(46);
    while (pairs.size() < 8) {
        QuinticModel a = random_model(rng), b = random_model(rng);
        if (validate_genus5(a) && validate_genus5(b)) pairs.emplace_back(a, b);
    }
    for (const auto& [a, b] : pairs) {
        bool fast = isomorphic(a, b, k3);
        bool full = isomorphic_fullgl3(a, b, k3);
        REQUIRE(fast == full);
    }
}

TEST_CASE("normalization counts are isomorphism invariants") {
    const FieldCtx& k9 = get_field(2);
    const auto& fx = fixtures::max_quintics_f9();
    for (const auto& cls : fixtures::classes_f9()) {
        for (std::size_t i = 1; i < cls.size(); ++i) {
            REQUIRE(isomorphic(fx[cls[0]], fx[cls[i]], k9));
            for (int e : {2, 4, 6}) CHECK(normalization_count(fx[cls[0]], e) == normalization_count(fx[cls[i]], e));
        }
    }
}

TEST_CASE("counts respect Hasse-Weil on validated models") {
    std::mt19937 rng(47);
    int done = 0;
    while (done < 40) {
        QuinticModel m = random_model(rng);
        if (!validate_genus5(m)) continue;
        ++done;
        for (int e : {1, 2, 3, 4}) {
            long long q = 1;
            for (int i = 0; i < e; ++i) q *= 3;
            CHECK(g5::zeta::hasse_weil_check(normalization_count(m, e), q));
        }
    }
}
