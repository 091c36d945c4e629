#include "chainlcd/lcp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "chainlcd/metrics.hpp"

namespace chainlcd {

namespace {

void require_same_shape(const MixedCode& c, const MixedCode& d) {
    if (!(c.shape == d.shape)) throw std::invalid_argument("codes live in different ambient modules");
}

MixedMatrix one_row(const MixedShape& sh, const MixedWord& w) { return MixedMatrix{sh, {w}}; }

MixedWord row_of(const RingMatrix& m) { return MixedWord(m.data.begin(), m.data.end()); }

// Residue blocks: first block of the free rows, second block of the remaining rows.
FieldMatrix residue_first(const MixedMatrix& g, int k0) {
    const Ring& r = *g.shape.ring;
    FieldMatrix out(r.field(), k0, g.shape.a);
    for (int i = 0; i < k0; ++i)
        for (int j = 0; j < g.shape.a; ++j) out.at(i, j) = r.residue(g.rows[i][j]);
    return out;
}

FieldMatrix residue_second(const MixedMatrix& g, int k0) {
    const Ring& r = *g.shape.ring;
    const int l0 = static_cast<int>(g.rows.size()) - k0;
    FieldMatrix out(r.field(), l0, g.shape.b);
    for (int i = 0; i < l0; ++i)
        for (int j = 0; j < g.shape.b; ++j) out.at(i, j) = r.residue(g.rows[k0 + i][g.shape.a + j]);
    return out;
}

RingMatrix split_identity(const Ring& r, int k, int l, int gap) {
    RingMatrix d(r, k + l, k + l);
    for (int i = 0; i < k; ++i) d.at(i, i) = 1;
    for (int i = 0; i < l; ++i) d.at(k + i, k + i) = r.gamma_pow(gap);
    return d;
}

// Strip gamma^{e-s} from the trailing l coordinates and read them in Rcheck.
MixedWord omega(const MixedShape& sh, const RingMatrix& psi, int k) {
    const Ring& r = *sh.ring;
    const int gap = r.e() - sh.s;
    MixedWord out = row_of(psi);
    for (std::size_t i = k; i < out.size(); ++i) {
        if (r.valuation(out[i]) < gap) throw std::logic_error("word is not in C (+) D");
        out[i] = r.reduce(r.div_gamma(out[i], gap), sh.s);
    }
    return out;
}

MixedWord combine(const MixedShape& sh, const MixedMatrix& g, int k, const MixedWord& coeffs, const char* what) {
    const Ring& r = *sh.ring;
    if (coeffs.size() != g.rows.size())
        throw std::invalid_argument(std::string(what) + " has length " + std::to_string(coeffs.size()) +
                                    ", expected " + std::to_string(g.rows.size()));
    Space sp(sh);
    MixedWord z(sh.n(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const elem bound = static_cast<int>(i) < k ? r.size() : r.quotient_size(sh.s);
        if (coeffs[i] >= bound) throw std::invalid_argument(std::string(what) + " has an entry outside its alphabet");
        z = sp.add(z, sp.scale(coeffs[i], g.rows[i]));
    }
    return z;
}

MixedShape first_only(const MixedShape& sh, int a) { return MixedShape{sh.ring, sh.s, a, 0}; }
MixedShape second_only(const MixedShape& sh, int b) { return MixedShape{sh.ring, sh.s, 0, b}; }

std::optional<int> distance_of(const MixedCode& c) {
    if (c.size() <= 1) return std::nullopt;
    return hamming_distance(c);
}

std::optional<int> dual_distance(const MixedCode& c) { return distance_of(dual_code(c, 0)); }

// Rows [first, last) of g restricted to one block, as a code in that block alone.
MixedCode block_span(const MixedMatrix& g, std::size_t first, std::size_t last, bool second) {
    const MixedShape& sh = g.shape;
    const MixedShape bs = second ? second_only(sh, sh.b) : first_only(sh, sh.a);
    std::vector<MixedWord> rows;
    for (std::size_t i = first; i < last; ++i) {
        const auto& row = g.rows[i];
        rows.emplace_back(second ? row.begin() + sh.a : row.begin(), second ? row.end() : row.begin() + sh.a);
    }
    return span_closure(bs, rows);
}

void validate_layout(const MixedMatrix& g, int k0, int l0, const char* what) {
    const Ring& r = *g.shape.ring;
    if (static_cast<int>(g.rows.size()) != k0 + l0)
        throw std::invalid_argument(std::string(what) + " must have " + std::to_string(k0 + l0) + " rows");
    for (int i = k0; i < k0 + l0; ++i)
        for (int j = 0; j < g.shape.a; ++j)
            if (r.valuation(g.rows[i][j]) < r.e() - g.shape.s)
                throw std::invalid_argument(std::string(what) + " row " + std::to_string(i + 1) +
                                            ": first block must lie in gamma^(e-s)R");
}

std::pair<int, int> free_ranks(const MixedCode& c) {
    const CodeType t = code_type(c);
    if (!t.weakly_free()) throw std::invalid_argument("not an LCP: " + t.str() + " is not weakly-free");
    return {t.k[0], t.l[0]};
}

}  // namespace

MixedMatrix parity_check(const MixedCode& c) { return standard_form(dual_code(c, 0)).generator; }

bool field_lcp(const FieldMatrix& g1, const FieldMatrix& g2) {
    if (g1.cols != g2.cols) throw std::invalid_argument("field codes of different lengths");
    if (field_rank(g1) < g1.rows || field_rank(g2) < g2.rows) throw std::invalid_argument("not a generator matrix");
    if (g1.rows + g2.rows != g1.cols) return false;
    if (g1.rows == 0) return true;
    const FieldMatrix k = field_kernel(g2);
    return field_invertible(field_mul_sigma(g1, k, 0)).invertible;
}

LcpVerdict is_lcp(const MixedCode& c, const MixedCode& d, LcpCriterion criterion) {
    require_same_shape(c, d);
    const MixedShape& sh = c.shape;
    const Ring& r = *sh.ring;
    LcpVerdict v;
    v.criterion = criterion;

    if (criterion == LcpCriterion::direct) {
        std::vector<std::uint32_t> common;
        std::set_intersection(c.words.begin(), c.words.end(), d.words.begin(), d.words.end(),
                              std::back_inserter(common));
        if (common.size() > 1) v.witness = Space(sh).word(common[1]);
        const bool sizes = static_cast<std::uint64_t>(c.size()) * d.size() == sh.module_size();
        v.is_lcp = common.size() == 1 && sizes;
        if (common.size() > 1)
            v.reason = "C and D share " + std::to_string(common.size()) + " words";
        else if (!sizes)
            v.reason = "|C| |D| != |M|";
        return v;
    }

    const StandardForm sc = standard_form(c), sd = standard_form(d);
    if (!sc.weakly_free || !sd.weakly_free) {
        v.reason = "not weakly-free";
        return v;
    }
    if (sc.k0 + sd.k0 != sh.a || sc.l0 + sd.l0 != sh.b) {
        v.reason = "types are not complementary";
        return v;
    }

    if (criterion == LcpCriterion::gram) {
        v.gram_valuations.assign(r.e() + 1, 0);
        for (int val : smith_valuations(diamond(sc.generator, parity_check(d), 0))) ++v.gram_valuations[val];
        std::vector<int> want(r.e() + 1, 0);
        want[0] = sc.k0;
        want[r.e() - sh.s] += sc.l0;
        v.is_lcp = v.gram_valuations == want;
        if (!v.is_lcp) v.reason = "G diamond Hhat^T has the wrong invariant factors";
        return v;
    }

    v.residue_x = field_lcp(residue_first(sc.generator, sc.k0), residue_first(sd.generator, sd.k0));
    v.residue_y = field_lcp(residue_second(sc.generator, sc.k0), residue_second(sd.generator, sd.k0));
    v.is_lcp = *v.residue_x && *v.residue_y;
    if (!v.is_lcp) v.reason = *v.residue_x ? "second residue pair is not an LCP" : "first residue pair is not an LCP";
    return v;
}

bool is_separable(const MixedCode& c) {
    Space sp(c.shape);
    MixedWord x;
    for (const auto& g : standard_form(c).generator.rows) {
        x = g;
        std::fill(x.begin() + c.shape.a, x.end(), 0);
        if (!c.contains(x)) return false;
    }
    return true;
}

bool separable_lcp_check(const MixedCode& c, const MixedCode& d) {
    require_same_shape(c, d);
    if (!is_separable(c) || !is_separable(d)) throw std::invalid_argument("not separable");
    const StandardForm sc = standard_form(c), sd = standard_form(d);
    if (!sc.weakly_free || !sd.weakly_free) return false;
    if (sc.k0 + sd.k0 != c.shape.a || sc.l0 + sd.l0 != c.shape.b) return false;
    return field_lcp(residue_first(sc.generator, sc.k0), residue_first(sd.generator, sd.k0)) &&
           field_lcp(residue_second(sc.generator, sc.k0), residue_second(sd.generator, sd.k0));
}

MaskingScheme build_scheme(const MixedMatrix& g, const MixedMatrix& h) {
    if (!(g.shape == h.shape)) throw std::invalid_argument("generator matrices of different shapes");
    const MixedShape& sh = g.shape;
    const Ring& r = *sh.ring;
    MaskingScheme s;
    s.shape = sh;
    s.C = span_closure(sh, g.rows);
    s.D = span_closure(sh, h.rows);
    const LcpVerdict v = is_lcp(s.C, s.D, LcpCriterion::direct);
    if (!v.is_lcp) throw std::invalid_argument("not an LCP: " + v.reason);
    std::tie(s.k0, s.l0) = free_ranks(s.C);
    validate_layout(g, s.k0, s.l0, "G");
    validate_layout(h, sh.a - s.k0, sh.b - s.l0, "H");
    s.G = g;
    s.H = h;
    s.Ghat = parity_check(s.C);
    s.Hhat = parity_check(s.D);
    const int gap = r.e() - sh.s;
    s.P1 = solve_right(diamond(s.G, s.Hhat, 0), split_identity(r, s.k0, s.l0, gap));
    s.P2 = solve_right(diamond(s.H, s.Ghat, 0), split_identity(r, sh.a - s.k0, sh.b - s.l0, gap));
    return s;
}

MaskingScheme build_scheme(const MixedCode& c, const MixedCode& d) {
    require_same_shape(c, d);
    const LcpVerdict v = is_lcp(c, d, LcpCriterion::direct);
    if (!v.is_lcp) throw std::invalid_argument("not an LCP: " + v.reason);
    return build_scheme(standard_form(c).generator, standard_form(d).generator);
}

MixedWord dsm_encode(const MaskingScheme& s, const MixedWord& x, const MixedWord& y) {
    Space sp(s.shape);
    return sp.add(combine(s.shape, s.G, s.k0, x, "x"), combine(s.shape, s.H, s.shape.a - s.k0, y, "y"));
}

MixedWord psi1(const MaskingScheme& s, const MixedWord& z) {
    Space(s.shape).validate(z);
    return row_of(mat_mul(diamond(one_row(s.shape, z), s.Hhat, 0), s.P1));
}

Decomposition dsm_recover(const MaskingScheme& s, const MixedWord& z) {
    Space(s.shape).validate(z);
    const auto zm = one_row(s.shape, z);
    Decomposition out;
    out.x = omega(s.shape, mat_mul(diamond(zm, s.Hhat, 0), s.P1), s.k0);
    out.y = omega(s.shape, mat_mul(diamond(zm, s.Ghat, 0), s.P2), s.shape.a - s.k0);
    return out;
}

MixedWord masked_key_add(const MaskingScheme& s, const MixedWord& z, const MixedWord& f) {
    Space sp(s.shape);
    sp.validate(z);
    return sp.add(z, combine(s.shape, s.G, s.k0, f, "key"));
}

MixedWord masked_linear(const MaskingScheme& s, const MixedWord& z, const RingMatrix& l1, const RingMatrix& l2) {
    const Ring& r = *s.shape.ring;
    if (l1.rows != static_cast<std::size_t>(s.k0) || l1.cols != l1.rows || l2.rows != static_cast<std::size_t>(s.l0) ||
        l2.cols != l2.rows)
        throw std::invalid_argument("linear layer must be k0 x k0 and l0 x l0");
    const Decomposition dec = dsm_recover(s, z);
    MixedWord x(dec.x.size(), 0);
    for (int j = 0; j < s.k0; ++j)
        for (int i = 0; i < s.k0; ++i) x[j] = r.add(x[j], r.mul(dec.x[i], l1.at(i, j)));
    for (int j = 0; j < s.l0; ++j) {
        elem acc = 0;
        for (int i = 0; i < s.l0; ++i) acc = r.add(acc, r.mul(dec.x[s.k0 + i], l2.at(i, j)));
        x[s.k0 + j] = r.reduce(acc, s.shape.s);
    }
    return dsm_encode(s, x, dec.y);
}

MixedWord masked_nonlinear(const MaskingScheme& s, const MixedWord& z, const std::vector<elem>& s1,
                           const std::vector<elem>& s2) {
    const Ring& r = *s.shape.ring;
    if (s1.size() != r.size() || s2.size() != r.quotient_size(s.shape.s))
        throw std::invalid_argument("lookup tables must cover R and Rcheck");
    const Decomposition dec = dsm_recover(s, z);
    MixedWord x = dec.x;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) x[i] = i < s.k0 ? s1[x[i]] : s2[x[i]];
    return dsm_encode(s, x, dec.y);
}

std::pair<std::vector<elem>, std::vector<elem>> demo_sboxes(const MixedShape& shape) {
    const Ring& r = *shape.ring;
    std::vector<elem> s1(r.size()), s2(r.quotient_size(shape.s));
    for (elem x = 0; x < r.size(); ++x) s1[x] = r.mul(x, r.mul(x, x));
    for (elem x = 0; x < s2.size(); ++x) s2[x] = x;
    return {s1, s2};
}

std::string to_string(FiaOutcome o) {
    switch (o) {
        case FiaOutcome::detected: return "detected";
        case FiaOutcome::undetected_benign: return "undetected-benign";
        case FiaOutcome::undetected_corrupting: return "undetected-corrupting";
    }
    return "?";
}

FiaOutcome fia_detect(const MaskingScheme& s, const MixedWord& z, const MixedWord& eps) {
    Space sp(s.shape);
    sp.validate(eps);
    const Decomposition before = dsm_recover(s, z), after = dsm_recover(s, sp.add(z, eps));
    if (after.y != before.y) return FiaOutcome::detected;
    return sp.is_zero(eps) ? FiaOutcome::undetected_benign
                           : (after.x == before.x ? FiaOutcome::undetected_benign : FiaOutcome::undetected_corrupting);
}

ScaReport sca_leakage_check(const MaskingScheme& s, const std::vector<int>& t1, const std::vector<int>& t2,
                            const MixedWord& x, std::uint64_t mask_cap) {
    const MixedShape& sh = s.shape;
    const Ring& r = *sh.ring;
    for (int i : t1)
        if (i < 0 || i >= sh.a) throw std::out_of_range("T1 index " + std::to_string(i) + " outside the first block");
    for (int i : t2)
        if (i < 0 || i >= sh.b) throw std::out_of_range("T2 index " + std::to_string(i) + " outside the second block");
    if (std::set<int>(t1.begin(), t1.end()).size() != t1.size() ||
        std::set<int>(t2.begin(), t2.end()).size() != t2.size())
        throw std::invalid_argument("probe sets must not repeat coordinates");

    ScaReport rep;
    const ThresholdReport th = security_threshold(s, ThresholdVariant::general);
    const auto below = [](std::size_t t, const std::optional<int>& d) { return t == 0 || !d || static_cast<int>(t) < *d; };
    rep.safe = below(t1.size(), th.d_dx_perp) && below(t2.size(), th.d_dy_perp);

    std::vector<int> cols;
    for (int i : t1) cols.push_back(i);
    for (int i : t2) cols.push_back(sh.a + i);
    const MixedShape ts{sh.ring, sh.s, static_cast<int>(t1.size()), static_cast<int>(t2.size())};
    if (cols.empty()) {
        rep.spans = true;
    } else {
        std::vector<MixedWord> rows;
        for (const auto& hr : s.H.rows) {
            MixedWord w;
            for (int c : cols) w.push_back(hr[c]);
            rows.push_back(w);
        }
        rep.spans = span_closure(ts, rows).size() == ts.module_size();
    }

    // Exact histogram of the probed values over every mask.
    const int ma = sh.a - s.k0, mb = sh.b - s.l0;
    const elem qr = r.size(), qc = r.quotient_size(sh.s);
    std::uint64_t masks = 1;
    for (int i = 0; i < ma + mb && masks <= mask_cap; ++i) masks *= i < ma ? qr : qc;
    const std::uint64_t cells = cols.empty() ? 1 : ts.module_size();
    if (masks > mask_cap || cells > mask_cap) return rep;
    rep.masks = masks;
    const MixedWord x0 = x.empty() ? MixedWord(s.k0 + s.l0, 0) : x;
    std::vector<std::uint64_t> hist(cells, 0);
    MixedWord y(ma + mb, 0);
    for (std::uint64_t m = 0; m < masks; ++m) {
        std::uint64_t rest = m;
        for (int i = ma + mb - 1; i >= 0; --i) {
            const elem base = i < ma ? qr : qc;
            y[i] = static_cast<elem>(rest % base);
            rest /= base;
        }
        const MixedWord z = dsm_encode(s, x0, y);
        std::uint64_t cell = 0;
        for (std::size_t j = 0; j < cols.size(); ++j) cell = cell * (j < t1.size() ? qr : qc) + z[cols[j]];
        ++hist[cell];
    }
    const auto [lo, hi] = std::minmax_element(hist.begin(), hist.end());
    rep.min_count = *lo;
    rep.max_count = *hi;
    rep.uniform = *lo == *hi;
    return rep;
}

MixedCode block_code_dx(const MaskingScheme& s) { return block_span(s.H, 0, s.shape.a - s.k0, false); }

MixedCode block_code_dy(const MaskingScheme& s) {
    return block_span(s.H, s.shape.a - s.k0, s.H.rows.size(), true);
}

ThresholdReport security_threshold(const MaskingScheme& s, ThresholdVariant v) {
    const MixedShape& sh = s.shape;
    ThresholdReport rep;
    std::vector<std::optional<int>> terms;
    if (v == ThresholdVariant::embedded) {
        const MixedShape es{sh.ring, sh.s, sh.n(), 0};
        rep.d_c_emb = distance_of(span_closure(es, s.G.rows));
        rep.d_d_emb_perp = dual_distance(span_closure(es, s.H.rows));
        terms = {rep.d_c_emb, rep.d_d_emb_perp};
    } else {
        rep.d_c = distance_of(s.C);
        if (sh.a > 0) rep.d_dx_perp = dual_distance(block_code_dx(s));
        if (sh.b > 0) rep.d_dy_perp = dual_distance(block_code_dy(s));
        terms = {rep.d_c, rep.d_dx_perp, rep.d_dy_perp};
        if (v == ThresholdVariant::separable) {
            if (sh.a > 0) rep.d_cx = distance_of(block_span(s.G, 0, s.k0, false));
            if (sh.b > 0) rep.d_cy = distance_of(block_span(s.G, s.k0, s.G.rows.size(), true));
            terms.push_back(rep.d_cx);
            terms.push_back(rep.d_cy);
        }
    }
    for (const auto& t : terms)
        if (t && (rep.threshold == 0 || *t < rep.threshold)) rep.threshold = *t;
    return rep;
}

std::pair<MixedMatrix, MixedMatrix> separable_companion(const MaskingScheme& s) {
    const auto split = [](const MixedMatrix& g, int k) {
        MixedMatrix out = g;
        for (int i = 0; i < static_cast<int>(out.rows.size()); ++i) {
            auto& row = out.rows[i];
            if (i < k)
                std::fill(row.begin() + g.shape.a, row.end(), 0);
            else
                std::fill(row.begin(), row.begin() + g.shape.a, 0);
        }
        return out;
    };
    return {split(s.G, s.k0), split(s.H, s.shape.a - s.k0)};
}

AdderResult adder_recover(const MaskingScheme& s, const MixedWord& z) {
    const MixedWord c = dsm_encode(s, dsm_recover(s, z).x, MixedWord(s.H.rows.size(), 0));
    return {c, Space(s.shape).sub(z, c)};
}

}  // namespace chainlcd
