#include <doctest.h>

#include <stdexcept>

#include "chainlcd/enumerate.hpp"
#include "support.hpp"

using namespace chainlcd;
using testing::code;
using testing::code_text;

namespace {

MixedWord row(const MixedShape& sh, const char* text) { return parse_row(sh, text, 1); }

}  // namespace

TEST_CASE("shape") {
    const MixedShape sh = make_shape("Z4", 1, 3, 2);
    CHECK(sh.module_size() == 256);
    CHECK(sh.str() == "Z4(s=1;3,2)");
    CHECK(make_shape("F8u2", 1, 3, 3).module_size() == (std::uint64_t{1} << 27));
    CHECK_THROWS_AS(make_shape("Z4", 2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_shape("Z4", 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_shape("Z5", 1, 1, 1), std::invalid_argument);
}

TEST_CASE("galois inner product") {
    const MixedShape f9 = make_shape("F9u2", 1, 1, 2);
    const MixedWord x = row(f9, "0 | 2 w");
    CHECK(galois_inner(f9, x, x, 1) == 0);
    const MixedShape z4 = make_shape("Z4", 1, 1, 1);
    CHECK(galois_inner(z4, {0, 0}, {3, 1}, 0) == 0);
    CHECK(galois_inner(z4, {1, 1}, {1, 1}, 0) == 3);
}

TEST_CASE("diamond product") {
    const MixedMatrix g2 = code_text("F8u2", 1, 3, 3, {"1 1 1 | 0 0 1", "0 u 0 | 1 0 0", "0 0 u | 0 1 0"});
    const MixedMatrix h2 = code_text("F8u2", 1, 3, 3, {"1 0 0 | 0 0 0", "0 0 0 | 1 0 0", "0 0 0 | 0 1 0"});
    const Ring& f8 = *g2.shape.ring;
    const elem u = f8.parse("u");
    CHECK(diamond(g2, h2, 0) == RingMatrix::from_rows(f8, {{1, 0, 0}, {0, u, 0}, {0, 0, u}}, 3));

    const MixedShape z = make_shape("Z4", 1, 1, 1);
    CHECK(diamond(MixedMatrix{z, {{0, 0}}}, MixedMatrix{z, {{0, 0}}}, 0) ==
          RingMatrix::from_rows(*z.ring, {{0}}, 1));

    // Integer oracle for the first row of a Z4 generator: sum of squares mod 4, second block doubled.
    const MixedMatrix g3 = code_text("Z4", 1, 5, 3, {"1 1 3 0 0 | 0 0 1", "0 0 2 0 2 | 1 0 0", "0 2 0 2 0 | 0 1 0"});
    const std::vector<int> first{1, 1, 3, 0, 0}, second{0, 0, 1};
    int acc = 0;
    for (int v : first) acc += v * v;
    for (int v : second) acc += 2 * v * v;
    CHECK(diamond(g3, g3, 0).at(0, 0) == static_cast<elem>(acc % 4));
    CHECK(diamond(g3, g3, 0).at(0, 0) == 1);
}

TEST_CASE("diamond agrees with entry-wise inner products") {
    for (const auto& sh : testing::mixed_shapes(256)) {
        Space sp(sh);
        const auto words = testing::all_words(sh);
        MixedMatrix g{sh, {}}, h{sh, {}};
        for (std::size_t i = 0; i < words.size(); i += 7) g.rows.push_back(words[i]);
        for (std::size_t i = 3; i < words.size(); i += 11) h.rows.push_back(words[i]);
        for (int hh : testing::all_h(sh)) {
            const RingMatrix d = diamond(g, h, hh);
            bool ok = true;
            for (std::size_t i = 0; i < g.rows.size(); ++i)
                for (std::size_t j = 0; j < h.rows.size(); ++j)
                    ok = ok && d.at(i, j) == galois_inner(sh, g.rows[i], h.rows[j], hh);
            CAPTURE(sh.str());
            CHECK(ok);
        }
    }
}

TEST_CASE("span closure") {
    const MixedShape sh = make_shape("Z4", 1, 2, 1);
    CHECK(span_closure(sh, {}).size() == 1);
    CHECK(span_closure(sh, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).size() == 32);
    const MixedCode c1 = code("F9u2", 1, 1, 2, {"0 | 2 w"});
    CHECK(c1.size() == 9);
    const MixedShape f9 = c1.shape;
    const Ring& r = *f9.ring;
    Space sp(f9);
    for (elem a = 0; a < 9; ++a) CHECK(c1.contains(sp.scale(r.teich_lift(a), row(f9, "0 | 2 w"))));
    CHECK_FALSE(c1.contains(row(f9, "0 | 1 0")));
}

TEST_CASE("code type") {
    const MixedShape sh = make_shape("Z4", 1, 3, 2);
    CHECK(code_type(zero_code(sh)) == CodeType{{0, 0}, {0}});
    CHECK(code_type(full_module(sh)).str() == "{3,0;2}");
    const MixedCode c2 = code("F8u2", 1, 3, 3, {"1 1 1 | 0 0 1", "0 u 0 | 1 0 0", "0 0 u | 0 1 0"});
    CHECK(code_type(c2).str() == "{1,0;2}");
    CHECK(c2.size() == 4096);
    CHECK(code_type(code("Z4", 1, 2, 1, {"2 0 | 0"})).str() == "{0,1;0}");
    CHECK(code_type(code("F9u2", 1, 1, 2, {"0 | 2 w"})).str() == "{0,0;1}");
}

TEST_CASE("type matches cardinality on every submodule") {
    for (const auto& sh : testing::mixed_shapes(128)) {
        const Ring& r = *sh.ring;
        enumerate_submodules(
            sh,
            [&](const MixedCode& c) {
                const CodeType t = code_type(c);
                std::uint64_t size = 1;
                for (int i = 0; i < r.e(); ++i)
                    for (int k = 0; k < t.k[i] * (r.e() - i); ++k) size *= r.q();
                for (int j = 0; j < sh.s; ++j)
                    for (int k = 0; k < t.l[j] * (sh.s - j); ++k) size *= r.q();
                CHECK(size == c.size());
            },
            256);
    }
}

TEST_CASE("standard form") {
    const MixedMatrix g = code_text("Z4", 1, 2, 2, {"1 1 | 0 1", "0 2 | 1 1"});
    const StandardForm sf = standard_form(testing::code_of(g));
    CHECK(sf.weakly_free);
    CHECK(sf.k0 == 1);
    CHECK(sf.l0 == 1);
    CHECK(sf.matrix == g);
    CHECK(sf.perm_a == std::vector<int>{0, 1});
    CHECK(sf.perm_b == std::vector<int>{0, 1});

    const MixedCode c1 = code("F9u2", 1, 1, 2, {"0 | 2 w"});
    const StandardForm s1 = standard_form(c1);
    CHECK(s1.weakly_free);
    CHECK(render_word(c1.shape, s1.generator.rows.at(0)) == "0 | 1 w5");
    CHECK(fingerprint(testing::code_of(s1.generator)) == fingerprint(c1));

    CHECK_FALSE(standard_form(code("Z4", 1, 2, 1, {"2 0 | 0"})).weakly_free);
}

TEST_CASE("standard form spans the code") {
    for (const auto& sh : testing::mixed_shapes(128))
        enumerate_submodules(
            sh,
            [&](const MixedCode& c) {
                const StandardForm sf = standard_form(c);
                CHECK(testing::code_of(sf.generator) == c);
                CHECK(sf.weakly_free == code_type(c).weakly_free());
            },
            256);
}

TEST_CASE("dual code") {
    const MixedShape sh = make_shape("Z4", 1, 2, 1);
    for (int h = 0; h < 1; ++h) {
        CHECK(dual_code(zero_code(sh), h) == full_module(sh));
        CHECK(dual_code(full_module(sh), h) == zero_code(sh));
    }
    const MixedCode d2 = code("F8u2", 1, 3, 3, {"0 1 0 | 0 0 0", "0 0 1 | 0 0 0", "0 0 0 | 0 0 1"});
    const MixedCode h2 = code("F8u2", 1, 3, 3, {"1 0 0 | 0 0 0", "0 0 0 | 1 0 0", "0 0 0 | 0 1 0"});
    CHECK(dual_code(d2, 0) == h2);
    const MixedCode c2 = code("F8u2", 1, 3, 3, {"1 1 1 | 0 0 1", "0 u 0 | 1 0 0", "0 0 u | 0 1 0"});
    CHECK(dual_code(c2, 1).size() == 32768);
}

TEST_CASE("duality identities on every submodule") {
    for (const auto& sh : testing::mixed_shapes(256)) {
        const std::uint64_t m = sh.module_size();
        std::uint64_t codes = 0;
        for (int h : testing::all_h(sh))
            enumerate_submodules(
                sh,
                [&](const MixedCode& c) {
                    ++codes;
                    const MixedCode d = dual_code(c, h);
                    CHECK(static_cast<std::uint64_t>(c.size()) * d.size() == m);
                    CHECK(dual_code(d, h) == c);
                    if (m <= 64) CHECK(d == dual_code_scan(c, h));
                },
                256);
        CAPTURE(sh.str());
        CHECK(codes > 0);
    }
}

TEST_CASE("fingerprint") {
    const MixedCode a = code("Z4", 1, 2, 2, {"1 1 | 0 1", "0 2 | 1 1"});
    const MixedCode b = code("Z4", 1, 2, 2, {"1 3 | 1 0", "0 2 | 1 1"});
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK(fingerprint(zero_code(a.shape)) != fingerprint(full_module(a.shape)));
    const MixedCode c = code("Z4", 1, 2, 2, {"1 0 | 0 0"});
    CHECK(fingerprint(c) != fingerprint(dual_code(c, 0)));
}

TEST_CASE("sesquilinearity, symmetry and non-degeneracy") {
    for (const auto& sh : testing::mixed_shapes(256)) {
        CAPTURE(sh.str());
        const Ring& r = *sh.ring;
        Space sp(sh);
        const auto words = testing::all_words(sh);
        for (int h : testing::all_h(sh)) {
            bool ok = true;
            for (const auto& x : words)
                for (std::size_t j = 0; j < words.size() && ok; ++j) {
                    const auto& y = words[j];
                    const elem v = galois_inner(sh, x, y, h);
                    for (elem s = 0; s < r.size() && ok; ++s) {
                        ok = galois_inner(sh, sp.scale(s, x), y, h) == r.mul(s, v) &&
                             galois_inner(sh, x, sp.scale(s, y), h) == r.mul(r.frobenius(s, h), v);
                    }
                    if (h == 0) ok = ok && v == galois_inner(sh, y, x, 0);
                    if (r.w() % 2 == 0 && h == r.w() / 2)
                        ok = ok && v == r.frobenius(galois_inner(sh, y, x, h), h);
                }
            CHECK(ok);
            bool nondegenerate = true;
            for (std::size_t i = 1; i < words.size(); ++i) {
                bool hit = false;
                for (const auto& y : words)
                    if (galois_inner(sh, words[i], y, h) != 0) {
                        hit = true;
                        break;
                    }
                nondegenerate = nondegenerate && hit;
            }
            CHECK(nondegenerate);
        }
    }
}

TEST_CASE("elementary operations keep pairs independent") {
    // {v1, v2} with period(v1) >= period(v2): r1 v1 + r2 v2 = 0 forces r1 v1 = r2 v2 = 0.
    for (const std::string ring : {"Z4", "Z9", "F4u2", "Z8"}) {
        const MixedShape sh = make_shape(ring, 1, 1, 1);
        const Ring& r = *sh.ring;
        Space sp(sh);
        const auto words = testing::all_words(sh);
        const auto independent = [&](const MixedWord& a, const MixedWord& b) {
            for (elem x = 0; x < r.size(); ++x)
                for (elem y = 0; y < r.size(); ++y)
                    if (sp.is_zero(sp.add(sp.scale(x, a), sp.scale(y, b))) &&
                        !(sp.is_zero(sp.scale(x, a)) && sp.is_zero(sp.scale(y, b))))
                        return false;
            return true;
        };
        const auto period = [&](const MixedWord& v) {
            int i = 0;
            while (!sp.is_zero(sp.scale(r.gamma_pow(i), v))) ++i;
            return i;
        };
        bool ok_a = true, ok_b = true;
        for (const auto& a : words)
            for (const auto& b : words) {
                const int i = period(a), j = period(b);
                if (j == 0 || j > i) continue;
                const bool ind = independent(a, b);
                bool all_a = true, all_b = true;
                for (elem x = 0; x < r.size(); ++x) {
                    all_a = all_a && independent(sp.sub(a, sp.scale(x, b)), b);
                    if (r.valuation(x) >= i - j) all_b = all_b && independent(a, sp.sub(b, sp.scale(x, a)));
                }
                ok_a = ok_a && ind == all_a;
                ok_b = ok_b && ind == all_b;
            }
        CAPTURE(ring);
        CHECK(ok_a);
        CHECK(ok_b);
    }
}

TEST_CASE("monomial maps") {
    const MixedShape sh = make_shape("Z4", 1, 2, 2);
    MonomialMap mu = MonomialMap::identity(sh);
    mu.perm_a = {1, 0};
    mu.scale_a = {3, 1};
    const MixedWord m{1, 2, 1, 0};
    CHECK(apply_monomial(sh, mu, m) == MixedWord{2, 1, 1, 0});
    CHECK(apply_monomial(sh, inverse(sh, mu), apply_monomial(sh, mu, m)) == m);
    CHECK(compose(sh, mu, inverse(sh, mu)) == MonomialMap::identity(sh));
}

TEST_CASE("code file parsing") {
    const std::string text = "ring F8u2\ns 1\nblocks 3 3\n1 1 1 | 0 0 1\n0 u 0 | 1 0 0\n0 0 u | 0 1 0\n";
    const MixedMatrix g = parse_code_text(text);
    CHECK(g.rows.size() == 3);
    CHECK(g.shape.a == 3);
    CHECK(g.shape.b == 3);
    CHECK(render_code_text(g) == text);
    CHECK(parse_code_text(render_code_text(g)) == g);

    const MixedMatrix empty = parse_code_text("ring Z4\ns 1\nblocks 2 1\n");
    CHECK(empty.rows.empty());
    CHECK(testing::code_of(empty).size() == 1);

    CHECK(parse_code_text("# comment\nring Z4\n\ns 1\nblocks 1 1\n1 | 1  # trailing\n").rows.size() == 1);

    try {
        parse_code_text("ring Z4\ns 1\nblocks 2 1\n1 0 | 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.column == 7);
        CHECK(std::string(e.what()).find("'2'") != std::string::npos);
        CHECK(std::string(e.what()).find("Z2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_code_text("ring Z4\ns 1\nblocks 2 1\n1 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_code_text("ring Z4\ns 1\nblocks 2 1\n1 | 0\n"), ParseError);
    CHECK_THROWS_AS(parse_code_text("ring Q4\ns 1\nblocks 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse_code_file("/nonexistent/file.code"), std::runtime_error);
}
