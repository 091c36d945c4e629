#include "chainlcd/lcd.hpp"

#include <stdexcept>

namespace chainlcd {

namespace {

std::vector<MixedWord> gens_of(const MixedCode& c) {
    if (!c.gens.empty() || c.size() <= 1) return c.gens;
    return code_from_words(c.shape, c.words).gens;
}

bool orthogonal_to_all(const MixedShape& sh, const MixedWord& x, const std::vector<MixedWord>& gens, int h) {
    for (const auto& g : gens)
        if (galois_inner(sh, x, g, h) != 0) return false;
    return true;
}

// Residues of the first block of the k rows and of the second block of the l rows.
std::pair<FieldMatrix, FieldMatrix> residue_blocks(const StandardForm& sf) {
    const MixedShape& sh = sf.generator.shape;
    const Ring& r = *sh.ring;
    FieldMatrix ax(r.field(), sf.k0, sh.a), fy(r.field(), sf.l0, sh.b);
    for (int i = 0; i < sf.k0; ++i)
        for (int j = 0; j < sh.a; ++j) ax.at(i, j) = r.residue(sf.generator.rows[i][j]);
    for (int i = 0; i < sf.l0; ++i)
        for (int j = 0; j < sh.b; ++j) fy.at(i, j) = r.residue(sf.generator.rows[sf.k0 + i][sh.a + j]);
    return {ax, fy};
}

bool gram_invertible(const FieldMatrix& g, int h) { return field_invertible(field_mul_sigma(g, g, h)).invertible; }

}  // namespace

LcdVerdict is_lcd_bruteforce(const MixedCode& c, int h) {
    const MixedShape& sh = c.shape;
    sh.ring->frobenius(0, h);
    Space sp(sh);
    const auto gens = gens_of(c);
    LcdVerdict v;
    for (const auto& g : gens)
        if (!sp.is_zero(g) && orthogonal_to_all(sh, g, gens, h)) {
            v.witness = g;
            break;
        }
    MixedWord x;
    for (std::uint32_t idx : c.words) {
        sp.word(idx, x);
        if (!orthogonal_to_all(sh, x, gens, h)) continue;
        ++v.intersection_size;
        if (!v.witness && idx != 0) v.witness = x;
    }
    v.is_lcd = v.intersection_size == 1;
    if (!v.is_lcd) v.reason = "C and its dual share " + std::to_string(v.intersection_size) + " words";
    return v;
}

LcdVerdict is_lcd_gram(const MixedCode& c, int h) {
    const Ring& r = *c.shape.ring;
    r.frobenius(0, h);
    const StandardForm sf = standard_form(c);
    LcdVerdict v;
    v.weakly_free = sf.weakly_free;
    if (!sf.weakly_free) {
        v.reason = "not weakly-free";
        return v;
    }
    v.gram_valuations.assign(r.e() + 1, 0);
    for (int val : smith_valuations(diamond(sf.generator, sf.generator, h))) ++v.gram_valuations[val];
    std::vector<int> want(r.e() + 1, 0);
    want[0] = sf.k0;
    want[r.e() - c.shape.s] += sf.l0;
    v.is_lcd = v.gram_valuations == want;
    if (!v.is_lcd) v.reason = "Gram matrix has the wrong invariant factors";
    return v;
}

LcdVerdict is_lcd_residue(const MixedCode& c, int h) {
    c.shape.ring->frobenius(0, h);
    const StandardForm sf = standard_form(c);
    LcdVerdict v;
    v.weakly_free = sf.weakly_free;
    if (!sf.weakly_free) {
        v.reason = "not weakly-free";
        return v;
    }
    auto [ax, fy] = residue_blocks(sf);
    v.residue_x = gram_invertible(ax, h);
    v.residue_y = gram_invertible(fy, h);
    v.is_lcd = *v.residue_x && *v.residue_y;
    if (!v.is_lcd) v.reason = *v.residue_x ? "second residue code is not LCD" : "first residue code is not LCD";
    return v;
}

bool field_lcd(const FieldMatrix& g, int h) {
    if (field_rank(g) < g.rows) throw std::invalid_argument("not a generator matrix");
    return gram_invertible(g, h);
}

RingMatrix bajalan_matrix(const MixedMatrix& g, int h) {
    const MixedShape& sh = g.shape;
    const Ring& r = *sh.ring;
    const int e = r.e(), s = sh.s;
    const int rows = static_cast<int>(g.rows.size());
    int k0 = 0;
    while (k0 < rows && k0 < sh.a && g.rows[k0][k0] == 1) ++k0;
    const int l0 = rows - k0;
    auto fail = [] { throw std::invalid_argument("matrix is not in standard form"); };
    if (l0 > sh.b) fail();
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < k0; ++j)
            if (g.rows[i][j] != (i == j ? 1u : 0u)) fail();
        for (int j = 0; j < l0; ++j)
            if (g.rows[i][sh.a + j] != (i == k0 + j ? 1u : 0u)) fail();
        if (i >= k0)
            for (int j = k0; j < sh.a; ++j)
                if (r.valuation(g.rows[i][j]) < e - s) fail();
    }
    const int ac = sh.a - k0, bc = sh.b - l0;
    RingMatrix am(r, k0, ac), bm(r, k0, bc), cm(r, l0, ac), dm(r, l0, bc);
    for (int i = 0; i < k0; ++i) {
        for (int j = 0; j < ac; ++j) am.at(i, j) = g.rows[i][k0 + j];
        for (int j = 0; j < bc; ++j) bm.at(i, j) = g.rows[i][sh.a + l0 + j];
    }
    for (int i = 0; i < l0; ++i) {
        for (int j = 0; j < ac; ++j) cm.at(i, j) = r.div_gamma(g.rows[k0 + i][k0 + j], e - s);
        for (int j = 0; j < bc; ++j) dm.at(i, j) = g.rows[k0 + i][sh.a + l0 + j];
    }
    RingMatrix second = mat_mul_sigma(bm, dm, h);
    const QuotientView qv = sh.quotient();
    for (auto& x : second.data) x = qv.iota(qv.reduce(x));
    return mat_add(mat_mul_sigma(am, cm, h), second);
}

bool bajalan_constraint(const MixedMatrix& g, int h) {
    const RingMatrix m = bajalan_matrix(g, h);
    for (elem x : m.data)
        if (m.ring->valuation(x) < 1) return false;
    return true;
}

MixedCode construct_lcd(const MixedShape& shape, int k0, int l0, const RingMatrix& a, const RingMatrix& b,
                        const RingMatrix& c, const RingMatrix& d) {
    const Ring& r = *shape.ring;
    const int ac = shape.a - k0, bc = shape.b - l0;
    auto dims = [](const RingMatrix& m, int rows, int cols) {
        return m.rows == static_cast<std::size_t>(rows) && m.cols == static_cast<std::size_t>(cols);
    };
    if (k0 < 0 || l0 < 0 || ac < 0 || bc < 0 || !dims(a, k0, ac) || !dims(b, k0, bc) || !dims(c, l0, ac) ||
        !dims(d, l0, bc))
        throw std::invalid_argument("construct_lcd: dimension mismatch");
    const elem g = r.gamma(), gs = r.gamma_pow(r.e() - shape.s);
    const int s = shape.s;
    std::vector<MixedWord> rows;
    for (int i = 0; i < k0; ++i) {
        MixedWord w(shape.n(), 0);
        w[i] = 1;
        for (int j = 0; j < ac; ++j) w[k0 + j] = r.mul(g, a.at(i, j));
        for (int j = 0; j < bc; ++j) w[shape.a + l0 + j] = r.reduce(b.at(i, j), s);
        rows.push_back(std::move(w));
    }
    for (int i = 0; i < l0; ++i) {
        MixedWord w(shape.n(), 0);
        for (int j = 0; j < ac; ++j) w[k0 + j] = r.mul(gs, c.at(i, j));
        w[shape.a + i] = 1;
        for (int j = 0; j < bc; ++j) w[shape.a + l0 + j] = r.reduce(r.mul(g, d.at(i, j)), s);
        rows.push_back(std::move(w));
    }
    return span_closure(shape, rows);
}

namespace {

// First scaling (lexicographic over coordinates, residue 1 first) making the scaled Gram invertible.
std::optional<std::vector<elem>> first_scaling(const FieldMatrix& g, int h, const std::vector<elem>& order,
                                                std::uint64_t& tried) {
    const Field& f = *g.field;
    const std::size_t n = g.cols;
    std::vector<std::size_t> pos(n, 0);
    for (;;) {
        ++tried;
        FieldMatrix scaled(g);
        for (std::size_t i = 0; i < g.rows; ++i)
            for (std::size_t j = 0; j < n; ++j) scaled.at(i, j) = f.mul(g.at(i, j), order[pos[j]]);
        if (gram_invertible(scaled, h)) {
            std::vector<elem> out(n);
            for (std::size_t j = 0; j < n; ++j) out[j] = order[pos[j]];
            return out;
        }
        std::size_t j = n;
        while (j > 0 && pos[j - 1] + 1 == order.size()) pos[--j] = 0;
        if (j == 0) return std::nullopt;
        ++pos[j - 1];
    }
}

}  // namespace

RepairResult lcd_repair_monomial(const MixedCode& c, int h, bool euclidean_only) {
    const MixedShape& sh = c.shape;
    const Ring& r = *sh.ring;
    if (euclidean_only) h = 0;
    r.frobenius(0, h);
    RepairResult out;
    const StandardForm sf = standard_form(c);
    if (!sf.weakly_free) {
        out.reason = "not weakly-free";
        return out;
    }
    std::vector<elem> order{1};
    for (elem x = 2; x < static_cast<elem>(r.q()); ++x) order.push_back(x);
    auto [ax, fy] = residue_blocks(sf);
    auto ra = first_scaling(ax, h, order, out.tried);
    if (!ra) {
        out.reason = "no unit scaling of the first block gives an LCD residue code";
        return out;
    }
    auto rb = first_scaling(fy, h, order, out.tried);
    if (!rb) {
        out.reason = "no unit scaling of the second block gives an LCD residue code";
        return out;
    }
    MonomialMap mu = MonomialMap::identity(sh);
    for (int j = 0; j < sh.a; ++j) mu.scale_a[j] = r.teich_lift((*ra)[j]);
    for (int j = 0; j < sh.b; ++j) mu.scale_b[j] = r.reduce(r.teich_lift((*rb)[j]), sh.s);
    out.success = true;
    out.scale_a = mu.scale_a;
    out.scale_b = mu.scale_b;
    out.code = apply_monomial(mu, c);
    return out;
}

}  // namespace chainlcd
