#include <doctest.h>

#include <stdexcept>

#include "chainlcd/enumerate.hpp"
#include "chainlcd/metrics.hpp"
#include "support.hpp"

using namespace chainlcd;

TEST_CASE("gray map") {
    const Ring& z4 = Ring::get("Z4");
    CHECK(gray_phi(z4, 0) == std::pair{0, 0});
    CHECK(gray_phi(z4, 1) == std::pair{0, 1});
    CHECK(gray_phi(z4, 2) == std::pair{1, 1});
    CHECK(gray_phi(z4, 3) == std::pair{1, 0});
    CHECK(gray_map(make_shape("Z4", 1, 2, 1), {1, 2, 1}) == std::vector<int>{0, 1, 1, 1, 1});
    CHECK_THROWS_AS(gray_phi(Ring::get("Z9"), 1), std::invalid_argument);
}

TEST_CASE("element weights") {
    CHECK(lee_weight("Z9", 7) == 2);
    CHECK(lee_weight("Z4", 2) == 2);
    CHECK(lee_weight("Z4", 3) == 1);
    const Ring& f4u2 = Ring::get("F4u2");
    CHECK(lee_weight("F4u2", f4u2.parse("1+u")) == 1);
    CHECK(lee_weight("F4u2", f4u2.parse("u")) == 2);
    CHECK(lee_weight("F4u2", f4u2.parse("w")) == 1);
    for (const char* a : {"Z4", "Z2", "Z9", "Z3", "F4u2", "F4"}) CHECK(lee_weight(a, 0) == 0);
    CHECK_THROWS_AS(lee_weight("Z8", 1), std::invalid_argument);
    CHECK_FALSE(lee_supported("F9u2"));

    // Z9: 1,8 -> 1; 2,7 -> 2; 3..6 -> 3.
    for (elem x = 1; x < 9; ++x) {
        const elem d = std::min<elem>(x, 9 - x);
        CHECK(lee_weight("Z9", x) == static_cast<int>(std::min<elem>(d, 3)));
    }
    const Field& f4 = f4u2.field();
    for (elem x = 0; x < 16; ++x) {
        const elem a0 = x % 4, a1 = x / 4;
        CHECK(lee_weight("F4u2", x) == (f4.add(a0, a1) != 0) + (a1 != 0));
    }
    CHECK(weight_table_csv("Z4") == "value,weight\n0,0\n1,1\n2,2\n3,1\n");
}

TEST_CASE("gray isometry and negation") {
    const Ring& z4 = Ring::get("Z4");
    for (elem x = 0; x < 4; ++x) {
        auto [b0, b1] = gray_phi(z4, x);
        CHECK(lee_weight("Z4", x) == b0 + b1);
        CHECK(lee_weight("Z4", z4.neg(x)) == lee_weight("Z4", x));
    }
}

TEST_CASE("published distances") {
    const auto lee = [](const MixedCode& c) { return code_distances(c).min_lee; };
    CHECK(lee(testing::code("Z4", 1, 1, 1, {"2 | 1"})) == 3);
    CHECK(lee(testing::code("Z9", 1, 3, 1, {"6 6 3 | 1"})) == 10);
    CHECK(lee(testing::code("F4u2", 1, 2, 1, {"u u | 1"})) == 5);

    const MixedShape sh = make_shape("Z4", 1, 1, 1);
    const WeightProfile z = code_distances(zero_code(sh));
    CHECK_FALSE(z.min_lee);
    CHECK_FALSE(z.min_hamming);
    CHECK(z.hamming_enumerator == std::vector<std::uint64_t>{1, 0, 0});
    CHECK(hamming_distance(zero_code(sh)) == 0);

    const WeightProfile f = code_distances(full_module(sh));
    CHECK(f.hamming_enumerator == std::vector<std::uint64_t>{1, 4, 3});
    CHECK(f.min_hamming == 1);
    CHECK(f.lee_distribution == std::map<int, std::uint64_t>{{0, 1}, {1, 3}, {2, 3}, {3, 1}});

    CHECK_FALSE(code_distances(full_module(make_shape("Z8", 1, 1, 1))).min_lee);
}

TEST_CASE("monomial invariants") {
    for (const char* ring : {"Z4", "Z9", "F4u2"}) {
        for (const auto& sh : testing::mixed_shapes(256)) {
            if (sh.ring->name() != ring) continue;
            CAPTURE(sh.str());
            const auto gens = monomial_generators(sh);
            bool enumerator_ok = true, lee_ok = true, bound_ok = true;
            for (const auto& c : enumerate_submodules(sh, 256)) {
                const WeightProfile p = code_distances(c);
                if (p.min_lee) bound_ok = bound_ok && *p.min_hamming <= *p.min_lee;
                for (const auto& mu : gens) {
                    const WeightProfile q = code_distances(apply_monomial(mu, c));
                    enumerator_ok = enumerator_ok && q.hamming_enumerator == p.hamming_enumerator;
                    if (sh.ring->name() == "Z4") lee_ok = lee_ok && q.lee_distribution == p.lee_distribution;
                }
            }
            CHECK(enumerator_ok);
            CHECK(lee_ok);
            CHECK(bound_ok);
        }
    }
}

TEST_CASE("lee distance can vary inside a Z9 orbit") {
    const MixedCode c = testing::code("Z9", 1, 1, 1, {"1 | 0"});
    const MixedCode d = testing::code("Z9", 1, 1, 1, {"1 | 1"});
    CHECK(code_distances(c).min_lee == 1);
    CHECK(code_distances(d).min_lee == 2);
    // Scaling the first coordinate by 2 sends [1 1 | 0] (Lee 2) to [2 1 | 0] (Lee 3).
    const MixedCode x = testing::code("Z9", 1, 2, 1, {"1 1 | 0"});
    MonomialMap mu = MonomialMap::identity(x.shape);
    mu.scale_a = {2, 1};
    const MixedCode y = apply_monomial(mu, x);
    CHECK(monomially_equivalent(x, y));
    CHECK(y == testing::code("Z9", 1, 2, 1, {"2 1 | 0"}));
    CHECK(code_distances(x).min_lee == 2);
    CHECK(code_distances(y).min_lee == 3);
}
