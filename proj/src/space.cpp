#include "chainlcd/space.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace chainlcd {

// ---------------------------------------------------------------- shapes

std::uint64_t MixedShape::module_size() const {
    std::uint64_t n = 1;
    for (int i = 0; i < a + b; ++i) {
        const std::uint64_t k = alphabet(i);
        if (n > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
        n *= k;
    }
    return n;
}

std::string MixedShape::str() const {
    return ring->name() + "(s=" + std::to_string(s) + ";" + std::to_string(a) + "," + std::to_string(b) + ")";
}

MixedShape make_shape(std::string_view ring, int s, int a, int b) {
    const Ring& r = Ring::get(ring);
    QuotientView check(r, s);
    (void)check;
    if (a < 0 || b < 0 || a + b < 1) throw std::invalid_argument("block lengths must be non-negative with a + b >= 1");
    return MixedShape{&r, s, a, b};
}

bool CodeType::weakly_free() const {
    for (std::size_t i = 1; i < k.size(); ++i)
        if (k[i] != 0) return false;
    for (std::size_t j = 1; j < l.size(); ++j)
        if (l[j] != 0) return false;
    return true;
}

std::string CodeType::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
    out += ";";
    for (std::size_t j = 0; j < l.size(); ++j) out += (j ? "," : "") + std::to_string(l[j]);
    return out + "}";
}

bool MixedCode::contains(std::uint32_t idx) const { return std::binary_search(words.begin(), words.end(), idx); }

bool MixedCode::contains(const MixedWord& w) const { return contains(Space(shape).index(w)); }

// ---------------------------------------------------------------- Space

Space::Space(const MixedShape& shape) : shape_(shape), size_(shape.module_size()) {
    if (size_ > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("module " + shape.str() + " is too large to index");
    const int n = shape.n();
    weight_.assign(n, 1);
    for (int i = n - 2; i >= 0; --i) weight_[i] = weight_[i + 1] * shape.alphabet(i + 1);
}

std::uint32_t Space::index(const MixedWord& w) const {
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < w.size(); ++i) idx += w[i] * weight_[i];
    return idx;
}

MixedWord Space::word(std::uint32_t idx) const {
    MixedWord w;
    word(idx, w);
    return w;
}

void Space::word(std::uint32_t idx, MixedWord& out) const {
    const int n = shape_.n();
    out.resize(n);
    for (int i = n - 1; i >= 0; --i) {
        const elem k = shape_.alphabet(i);
        out[i] = idx % k;
        idx /= k;
    }
}

MixedWord Space::add(const MixedWord& x, const MixedWord& y) const {
    const Ring& r = *shape_.ring;
    MixedWord z(x.size());
    for (int i = 0; i < shape_.a; ++i) z[i] = r.add(x[i], y[i]);
    for (int i = shape_.a; i < shape_.n(); ++i) z[i] = r.reduce(r.add(x[i], y[i]), shape_.s);
    return z;
}

MixedWord Space::neg(const MixedWord& x) const {
    const Ring& r = *shape_.ring;
    MixedWord z(x.size());
    for (int i = 0; i < shape_.a; ++i) z[i] = r.neg(x[i]);
    for (int i = shape_.a; i < shape_.n(); ++i) z[i] = r.reduce(r.neg(x[i]), shape_.s);
    return z;
}

MixedWord Space::sub(const MixedWord& x, const MixedWord& y) const { return add(x, neg(y)); }

MixedWord Space::scale(elem c, const MixedWord& m) const {
    const Ring& r = *shape_.ring;
    MixedWord z(m.size());
    for (int i = 0; i < shape_.a; ++i) z[i] = r.mul(c, m[i]);
    for (int i = shape_.a; i < shape_.n(); ++i) z[i] = r.reduce(r.mul(c, m[i]), shape_.s);
    return z;
}

bool Space::is_zero(const MixedWord& m) const {
    return std::all_of(m.begin(), m.end(), [](elem x) { return x == 0; });
}

void Space::validate(const MixedWord& m) const {
    if (static_cast<int>(m.size()) != shape_.n())
        throw std::invalid_argument("word has length " + std::to_string(m.size()) + ", expected " +
                                    std::to_string(shape_.n()));
    for (int i = 0; i < shape_.n(); ++i)
        if (m[i] >= shape_.alphabet(i))
            throw std::invalid_argument("entry " + std::to_string(i) + " outside its alphabet");
}

// ---------------------------------------------------------------- inner products

elem galois_inner(const MixedShape& shape, const MixedWord& m1, const MixedWord& m2, int h) {
    const Ring& r = *shape.ring;
    elem first = 0, second = 0;
    for (int i = 0; i < shape.a; ++i) first = r.add(first, r.mul(m1[i], r.frobenius(m2[i], h)));
    for (int i = shape.a; i < shape.n(); ++i) second = r.add(second, r.mul(m1[i], r.frobenius(m2[i], h)));
    return r.add(first, r.mul(r.gamma_pow(r.e() - shape.s), second));
}

RingMatrix diamond(const MixedMatrix& g, const MixedMatrix& hm, int h) {
    if (!(g.shape == hm.shape)) throw std::invalid_argument("diamond: shape mismatch");
    const MixedShape& sh = g.shape;
    const Ring& r = *sh.ring;
    auto block = [&](const MixedMatrix& m, int from, int len) {
        RingMatrix out(r, m.rows.size(), len);
        for (std::size_t i = 0; i < m.rows.size(); ++i)
            for (int j = 0; j < len; ++j) out.at(i, j) = m.rows[i][from + j];
        return out;
    };
    RingMatrix first = mat_mul_sigma(block(g, 0, sh.a), block(hm, 0, sh.a), h);
    RingMatrix second = mat_mul_sigma(block(g, sh.a, sh.b), block(hm, sh.a, sh.b), h);
    const QuotientView qv = sh.quotient();
    for (auto& x : second.data) x = qv.iota(qv.reduce(x));
    return mat_add(first, second);
}

// ---------------------------------------------------------------- spans

namespace {

// All distinct multiples r * g, as decoded words.
std::vector<MixedWord> multiples(const Space& sp, const MixedWord& g) {
    const Ring& r = *sp.shape().ring;
    std::vector<std::uint32_t> seen;
    std::vector<MixedWord> out;
    for (elem c = 0; c < r.size(); ++c) {
        MixedWord m = sp.scale(c, g);
        const std::uint32_t idx = sp.index(m);
        if (std::find(seen.begin(), seen.end(), idx) != seen.end()) continue;
        seen.push_back(idx);
        out.push_back(std::move(m));
    }
    return out;
}

void sumset(const Space& sp, std::vector<std::uint32_t>& set, const MixedWord& g) {
    const auto mult = multiples(sp, g);
    std::vector<std::uint32_t> next;
    next.reserve(set.size() * mult.size());
    MixedWord x;
    for (std::uint32_t idx : set) {
        sp.word(idx, x);
        for (const auto& m : mult) next.push_back(sp.index(sp.add(x, m)));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    set.swap(next);
}

}  // namespace

MixedCode span_closure(const MixedShape& shape, const std::vector<MixedWord>& gens) {
    Space sp(shape);
    std::vector<std::uint32_t> set{0};
    std::vector<MixedWord> kept;
    for (const auto& g : gens) {
        sp.validate(g);
        if (std::binary_search(set.begin(), set.end(), sp.index(g))) continue;
        sumset(sp, set, g);
        kept.push_back(g);
    }
    return MixedCode{shape, std::move(set), std::move(kept)};
}

MixedCode code_from_words(const MixedShape& shape, std::vector<std::uint32_t> words) {
    Space sp(shape);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    if (words.empty() || words.front() != 0) throw std::invalid_argument("word set is not a submodule");
    std::vector<std::uint32_t> set{0};
    std::vector<MixedWord> gens;
    for (std::uint32_t idx : words) {
        if (set.size() >= words.size()) break;
        if (std::binary_search(set.begin(), set.end(), idx)) continue;
        MixedWord g = sp.word(idx);
        sumset(sp, set, g);
        gens.push_back(std::move(g));
    }
    if (set != words) throw std::invalid_argument("word set is not a submodule");
    return MixedCode{shape, std::move(words), std::move(gens)};
}

MixedCode zero_code(const MixedShape& shape) {
    Space sp(shape);
    return MixedCode{shape, {0}, {}};
}

MixedCode full_module(const MixedShape& shape) {
    std::vector<MixedWord> gens;
    for (int i = 0; i < shape.n(); ++i) {
        MixedWord g(shape.n(), 0);
        g[i] = 1;
        gens.push_back(std::move(g));
    }
    return span_closure(shape, gens);
}

// ---------------------------------------------------------------- type

namespace {

int log_q(std::size_t n, int q) {
    int d = 0;
    while (n > 1) {
        n /= q;
        ++d;
    }
    return d;
}

}  // namespace

CodeType code_type(const MixedCode& c) {
    const MixedShape& sh = c.shape;
    const Ring& r = *sh.ring;
    const int e = r.e(), s = sh.s, q = r.q();
    Space sp(sh);

    // dims[p] = (log_q |S_p|, log_q |Z_p|) for p = 1 .. e + 1.
    std::vector<int> dim_s(e + 2, 0), dim_z(e + 2, 0);
    MixedWord x;
    for (int p = 1; p <= e; ++p) {
        const elem g = r.gamma_pow(p - 1);
        std::vector<std::uint32_t> img;
        img.reserve(c.words.size());
        for (std::uint32_t idx : c.words) {
            sp.word(idx, x);
            MixedWord y = sp.scale(g, x);
            if (!sp.is_zero(sp.scale(r.gamma(), y))) continue;
            img.push_back(sp.index(y));
        }
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        std::size_t zcount = 0;
        for (std::uint32_t idx : img) {
            sp.word(idx, x);
            if (std::all_of(x.begin() + sh.a, x.end(), [](elem v) { return v == 0; })) ++zcount;
        }
        dim_s[p] = log_q(img.size(), q);
        dim_z[p] = log_q(zcount, q);
    }

    CodeType t;
    t.k.assign(e, 0);
    t.l.assign(s, 0);
    for (int i = 0; i < e; ++i) t.k[i] = dim_z[e - i] - dim_z[e - i + 1];
    for (int j = 0; j < s; ++j)
        t.l[j] = (dim_s[s - j] - dim_s[s - j + 1]) - (dim_z[s - j] - dim_z[s - j + 1]);

    int total = 0;
    for (int i = 0; i < e; ++i) total += (e - i) * t.k[i];
    for (int j = 0; j < s; ++j) total += (s - j) * t.l[j];
    if (total != log_q(c.size(), q)) throw std::logic_error("type does not account for |C| of " + sh.str());
    return t;
}

// ---------------------------------------------------------------- standard form

namespace {

struct Reducer {
    const MixedShape& sh;
    const Ring& r;
    Space sp;

    explicit Reducer(const MixedShape& shape) : sh(shape), r(*shape.ring), sp(shape) {}

    // row_t -= c * row_i
    void axpy(MixedWord& t, elem c, const MixedWord& i) const { t = sp.sub(t, sp.scale(c, i)); }
};

std::vector<MixedWord> generators_of(const MixedCode& c) {
    if (!c.gens.empty() || c.size() <= 1) return c.gens;
    return code_from_words(c.shape, c.words).gens;
}

}  // namespace

StandardForm standard_form(const MixedCode& c) {
    const MixedShape& sh = c.shape;
    Reducer red(sh);
    const Ring& r = red.r;
    const int e = r.e(), s = sh.s;
    std::vector<MixedWord> rows = generators_of(c);
    const std::size_t m = rows.size();
    std::vector<int> role(m, -1);  // -1 leftover, 0 first-block pivot, 1 second-block pivot
    std::vector<std::pair<int, std::size_t>> kp, lp;  // (column, row)

    for (int j = 0; j < sh.a; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            if (role[i] != -1 || !r.is_unit(rows[i][j])) continue;
            rows[i] = red.sp.scale(r.inv(rows[i][j]), rows[i]);
            for (std::size_t t = 0; t < m; ++t)
                if (t != i && rows[t][j] != 0) red.axpy(rows[t], rows[t][j], rows[i]);
            role[i] = 0;
            kp.emplace_back(j, i);
            break;
        }
    }
    for (int j = 0; j < sh.b; ++j) {
        const int col = sh.a + j;
        for (std::size_t i = 0; i < m; ++i) {
            if (role[i] != -1 || !r.is_unit(rows[i][col])) continue;
            rows[i] = red.sp.scale(r.inv(rows[i][col]), rows[i]);
            for (std::size_t t = 0; t < m; ++t)
                if (t != i && rows[t][col] != 0) red.axpy(rows[t], rows[t][col], rows[i]);
            role[i] = 1;
            lp.emplace_back(j, i);
            break;
        }
    }

    bool wf = true;
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i < m; ++i)
        if (role[i] == -1 && !red.sp.is_zero(rows[i])) left.push_back(i);
    if (!left.empty()) wf = false;
    for (auto [col, i] : lp)
        for (int j = 0; j < sh.a; ++j)
            if (r.valuation(rows[i][j]) < e - s) wf = false;

    StandardForm out;
    out.weakly_free = wf;
    out.k0 = static_cast<int>(kp.size());
    out.l0 = static_cast<int>(lp.size());
    std::vector<MixedWord> ordered;
    for (auto [col, i] : kp) ordered.push_back(rows[i]);
    for (auto [col, i] : lp) ordered.push_back(rows[i]);

    if (!wf) {
        // Row-reduce the leftovers by largest-period pivots; the result generates C but is not standard.
        const QuotientView qv = sh.quotient();
        std::vector<std::size_t> active = left;
        while (!active.empty()) {
            int best_period = 0, best_col = -1;
            std::size_t best_pos = 0;
            for (std::size_t pos = 0; pos < active.size(); ++pos) {
                const auto& row = rows[active[pos]];
                for (int j = 0; j < sh.n(); ++j) {
                    if (row[j] == 0) continue;
                    const int period = j < sh.a ? e - r.valuation(row[j]) : s - qv.valuation(row[j]);
                    if (period > best_period) {
                        best_period = period;
                        best_col = j;
                        best_pos = pos;
                    }
                }
            }
            if (best_col < 0) break;
            const std::size_t pi = active[best_pos];
            const int v = r.valuation(rows[pi][best_col]);
            const elem unit = r.div_gamma(rows[pi][best_col], v);
            rows[pi] = red.sp.scale(r.inv(unit), rows[pi]);
            for (std::size_t t : active) {
                if (t == pi || rows[t][best_col] == 0) continue;
                red.axpy(rows[t], r.div_gamma(rows[t][best_col], v), rows[pi]);
            }
            ordered.push_back(rows[pi]);
            active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_pos));
            active.erase(std::remove_if(active.begin(), active.end(),
                                        [&](std::size_t t) { return red.sp.is_zero(rows[t]); }),
                         active.end());
        }
    }

    auto permutation = [](int len, const std::vector<std::pair<int, std::size_t>>& piv) {
        std::vector<int> perm;
        std::vector<bool> used(len, false);
        for (auto [col, i] : piv) {
            perm.push_back(col);
            used[col] = true;
        }
        for (int j = 0; j < len; ++j)
            if (!used[j]) perm.push_back(j);
        return perm;
    };
    out.perm_a = permutation(sh.a, kp);
    out.perm_b = permutation(sh.b, lp);
    out.generator = MixedMatrix{sh, ordered};
    out.matrix.shape = sh;
    for (const auto& row : ordered) {
        MixedWord p(sh.n());
        for (int i = 0; i < sh.a; ++i) p[i] = row[out.perm_a[i]];
        for (int j = 0; j < sh.b; ++j) p[sh.a + j] = row[sh.a + out.perm_b[j]];
        out.matrix.rows.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------- duals

namespace {

constexpr std::uint64_t kDualCap = std::uint64_t{1} << 26;

// Contribution of coordinate j holding x to <m, g>_h.
elem term(const MixedShape& sh, int j, elem x, elem g, int h) {
    const Ring& r = *sh.ring;
    const elem t = r.mul(x, r.frobenius(g, h));
    if (j < sh.a) return t;
    return r.mul(r.gamma_pow(r.e() - sh.s), t);
}

}  // namespace

MixedCode dual_code(const MixedCode& c, int h) {
    const MixedShape& sh = c.shape;
    const Ring& r = *sh.ring;
    r.frobenius(0, h);
    Space sp(sh);
    std::vector<MixedWord> gens = generators_of(c);
    if (gens.empty()) return full_module(sh);
    if (gens.size() > static_cast<std::size_t>(sh.n())) gens = standard_form(c).generator.rows;
    if (sp.size() / c.size() > kDualCap) throw std::length_error("dual of a code in " + sh.str() + " is too large");

    const int n = sh.n();
    const std::size_t k = gens.size();
    // Split so both halves are about sqrt|M|.
    int split = 0;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (int m = 0; m <= n; ++m) {
        std::uint64_t pre = 1, suf = 1;
        for (int i = 0; i < m; ++i) pre *= sh.alphabet(i);
        for (int i = m; i < n; ++i) suf *= sh.alphabet(i);
        if (std::max(pre, suf) < best) {
            best = std::max(pre, suf);
            split = m;
        }
    }
    std::uint64_t pre_size = 1, suf_size = 1;
    for (int i = 0; i < split; ++i) pre_size *= sh.alphabet(i);
    for (int i = split; i < n; ++i) suf_size *= sh.alphabet(i);

    auto digits_of = [&](std::uint64_t idx, int from, int to, std::vector<elem>& out) {
        out.assign(to - from, 0);
        for (int i = to - 1; i >= from; --i) {
            out[i - from] = static_cast<elem>(idx % sh.alphabet(i));
            idx /= sh.alphabet(i);
        }
    };
    auto key = [&](const std::vector<elem>& d, int from, bool negate) {
        std::string out(k, '\0');
        for (std::size_t g = 0; g < k; ++g) {
            elem acc = 0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                const int j = from + static_cast<int>(i);
                if (d[i] != 0) acc = r.add(acc, term(sh, j, d[i], gens[g][j], h));
            }
            out[g] = static_cast<char>(negate ? r.neg(acc) : acc);
        }
        return out;
    };

    std::unordered_map<std::string, std::vector<std::uint32_t>> table;
    std::vector<elem> d;
    for (std::uint64_t p = 0; p < pre_size; ++p) {
        digits_of(p, 0, split, d);
        table[key(d, 0, false)].push_back(static_cast<std::uint32_t>(p));
    }
    std::vector<std::uint32_t> words;
    for (std::uint64_t s = 0; s < suf_size; ++s) {
        digits_of(s, split, n, d);
        auto it = table.find(key(d, split, true));
        if (it == table.end()) continue;
        for (std::uint32_t p : it->second) words.push_back(static_cast<std::uint32_t>(p * suf_size + s));
    }
    return code_from_words(sh, std::move(words));
}

MixedCode dual_code_scan(const MixedCode& c, int h) {
    const MixedShape& sh = c.shape;
    sh.ring->frobenius(0, h);
    Space sp(sh);
    const std::vector<MixedWord> gens = generators_of(c);
    std::vector<std::uint32_t> words;
    MixedWord x;
    for (std::uint64_t idx = 0; idx < sp.size(); ++idx) {
        sp.word(static_cast<std::uint32_t>(idx), x);
        bool ok = true;
        for (const auto& g : gens)
            if (galois_inner(sh, x, g, h) != 0) {
                ok = false;
                break;
            }
        if (ok) words.push_back(static_cast<std::uint32_t>(idx));
    }
    return code_from_words(sh, std::move(words));
}

std::string fingerprint(const MixedCode& c) {
    std::string out = c.shape.str() + ":";
    out.reserve(out.size() + 4 * c.words.size());
    for (std::uint32_t w : c.words)
        for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
    return out;
}

// ---------------------------------------------------------------- monomial maps

MonomialMap MonomialMap::identity(const MixedShape& shape) {
    MonomialMap mu;
    mu.perm_a.resize(shape.a);
    mu.perm_b.resize(shape.b);
    std::iota(mu.perm_a.begin(), mu.perm_a.end(), 0);
    std::iota(mu.perm_b.begin(), mu.perm_b.end(), 0);
    mu.scale_a.assign(shape.a, 1);
    mu.scale_b.assign(shape.b, 1);
    return mu;
}

MixedWord apply_monomial(const MixedShape& shape, const MonomialMap& mu, const MixedWord& m) {
    const Ring& r = *shape.ring;
    MixedWord out(m.size());
    for (int i = 0; i < shape.a; ++i) out[i] = r.mul(mu.scale_a[i], m[mu.perm_a[i]]);
    for (int j = 0; j < shape.b; ++j)
        out[shape.a + j] = r.reduce(r.mul(mu.scale_b[j], m[shape.a + mu.perm_b[j]]), shape.s);
    return out;
}

MixedCode apply_monomial(const MonomialMap& mu, const MixedCode& c) {
    Space sp(c.shape);
    MixedCode out{c.shape, {}, {}};
    out.words.reserve(c.words.size());
    MixedWord x;
    for (std::uint32_t idx : c.words) {
        sp.word(idx, x);
        out.words.push_back(sp.index(apply_monomial(c.shape, mu, x)));
    }
    std::sort(out.words.begin(), out.words.end());
    for (const auto& g : c.gens) out.gens.push_back(apply_monomial(c.shape, mu, g));
    return out;
}

MonomialMap compose(const MixedShape& shape, const MonomialMap& mu, const MonomialMap& nu) {
    const Ring& r = *shape.ring;
    MonomialMap out = mu;
    for (int i = 0; i < shape.a; ++i) {
        out.perm_a[i] = nu.perm_a[mu.perm_a[i]];
        out.scale_a[i] = r.mul(mu.scale_a[i], nu.scale_a[mu.perm_a[i]]);
    }
    for (int j = 0; j < shape.b; ++j) {
        out.perm_b[j] = nu.perm_b[mu.perm_b[j]];
        out.scale_b[j] = r.reduce(r.mul(mu.scale_b[j], nu.scale_b[mu.perm_b[j]]), shape.s);
    }
    return out;
}

MonomialMap inverse(const MixedShape& shape, const MonomialMap& mu) {
    const Ring& r = *shape.ring;
    MonomialMap out = mu;
    for (int i = 0; i < shape.a; ++i) {
        out.perm_a[mu.perm_a[i]] = i;
        out.scale_a[mu.perm_a[i]] = r.inv(mu.scale_a[i]);
    }
    for (int j = 0; j < shape.b; ++j) {
        out.perm_b[mu.perm_b[j]] = j;
        out.scale_b[mu.perm_b[j]] = r.reduce(r.inv(mu.scale_b[j]), shape.s);
    }
    return out;
}

// ---------------------------------------------------------------- text format

ParseError::ParseError(int line_, int column_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + msg),
      line(line_),
      column(column_) {}

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view s, int offset) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) break;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        out.push_back({std::string(s.substr(start, i - start)), offset + static_cast<int>(start) + 1});
    }
    return out;
}

}  // namespace

MixedWord parse_row(const MixedShape& shape, std::string_view row, int line) {
    const auto bar = row.find('|');
    if (bar == std::string_view::npos) throw ParseError(line, 1, "expected '|' between the two blocks");
    if (row.find('|', bar + 1) != std::string_view::npos)
        throw ParseError(line, static_cast<int>(row.find('|', bar + 1)) + 1, "more than one '|'");
    const auto left = tokenize(row.substr(0, bar), 0);
    const auto right = tokenize(row.substr(bar + 1), static_cast<int>(bar) + 1);
    if (static_cast<int>(left.size()) != shape.a)
        throw ParseError(line, 1,
                         "first block has " + std::to_string(left.size()) + " entries, expected " +
                             std::to_string(shape.a));
    if (static_cast<int>(right.size()) != shape.b)
        throw ParseError(line, static_cast<int>(bar) + 2,
                         "second block has " + std::to_string(right.size()) + " entries, expected " +
                             std::to_string(shape.b));
    const Ring& r = *shape.ring;
    const QuotientView qv = shape.quotient();
    MixedWord w;
    for (const auto& t : left) {
        try {
            w.push_back(r.parse(t.text));
        } catch (const std::invalid_argument&) {
            throw ParseError(line, t.column, "token '" + t.text + "' is not an element of " + r.name());
        }
    }
    for (const auto& t : right) {
        elem x = 0;
        bool ok = true;
        try {
            x = r.parse(t.text);
        } catch (const std::invalid_argument&) {
            ok = false;
        }
        if (!ok || x >= qv.size())
            throw ParseError(line, t.column, "token '" + t.text + "' is not an element of " + qv.name());
        w.push_back(x);
    }
    return w;
}

MixedMatrix parse_code_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    int header = 0;
    std::string ring_name;
    int s = 0, a = 0, b = 0;
    MixedMatrix m;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto toks = tokenize(raw, 0);
        if (toks.empty()) continue;
        auto need_int = [&](const Token& t) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(t.text, &used);
                if (used != t.text.size()) throw std::invalid_argument("");
                return v;
            } catch (const std::exception&) {
                throw ParseError(line, t.column, "expected an integer, got '" + t.text + "'");
            }
        };
        if (header == 0) {
            if (toks[0].text != "ring" || toks.size() != 2) throw ParseError(line, toks[0].column, "expected 'ring <spec>'");
            ring_name = toks[1].text;
            try {
                Ring::get(ring_name);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(line, toks[1].column, ex.what());
            }
            ++header;
        } else if (header == 1) {
            if (toks[0].text != "s" || toks.size() != 2) throw ParseError(line, toks[0].column, "expected 's <int>'");
            s = need_int(toks[1]);
            ++header;
        } else if (header == 2) {
            if (toks[0].text != "blocks" || toks.size() != 3)
                throw ParseError(line, toks[0].column, "expected 'blocks <a> <b>'");
            a = need_int(toks[1]);
            b = need_int(toks[2]);
            try {
                m.shape = make_shape(ring_name, s, a, b);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(line, toks[0].column, ex.what());
            }
            ++header;
        } else {
            m.rows.push_back(parse_row(m.shape, raw, line));
        }
    }
    if (header < 3) throw ParseError(line + 1, 1, "incomplete header");
    return m;
}

MixedMatrix parse_code_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_code_text(ss.str());
}

std::string render_word(const MixedShape& shape, const MixedWord& w) {
    const Ring& r = *shape.ring;
    std::string out;
    for (int i = 0; i < shape.a; ++i) out += (i ? " " : "") + r.render(w[i]);
    out += shape.a ? " |" : "|";
    for (int j = 0; j < shape.b; ++j) out += " " + r.render(w[shape.a + j]);
    return out;
}

std::string render_code_text(const MixedMatrix& m) {
    std::string out = "ring " + m.shape.ring->name() + "\ns " + std::to_string(m.shape.s) + "\nblocks " +
                      std::to_string(m.shape.a) + " " + std::to_string(m.shape.b) + "\n";
    for (const auto& row : m.rows) out += render_word(m.shape, row) + "\n";
    return out;
}

}  // namespace chainlcd
