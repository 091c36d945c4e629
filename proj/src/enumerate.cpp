#include "chainlcd/enumerate.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "chainlcd/lcd.hpp"
#include "chainlcd/metrics.hpp"

namespace chainlcd {

// ---------------------------------------------------------------- counting formulas

BigInt gaussian_binomial(int n, int r, const BigInt& q) {
    if (r < 0 || r > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < r; ++i) {
        num *= boost::multiprecision::pow(q, n) - boost::multiprecision::pow(q, i);
        den *= boost::multiprecision::pow(q, r) - boost::multiprecision::pow(q, i);
    }
    return num / den;
}

namespace {

BigInt ipow(int base, int exp) {
    if (exp < 0) throw std::logic_error("negative exponent");
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

}  // namespace

BigInt count_field_euclidean(int n, int r, int q) {
    if (r < 0 || r > n) return 0;
    if (r == 0 || r == n) return 1;
    const BigInt q2 = BigInt(q) * q;
    const bool n_odd = n % 2 != 0, r_odd = r % 2 != 0;
    if (n_odd && r_odd) return ipow(q, (n - r) * (r + 1) / 2) * gaussian_binomial((n - 1) / 2, (r - 1) / 2, q2);
    if (n_odd) return ipow(q, r * (n - r + 1) / 2) * gaussian_binomial((n - 1) / 2, r / 2, q2);
    if (q % 2 == 0) {
        if (r_odd) return ipow(q, (n * r - r * r + n - 1) / 2) * gaussian_binomial((n - 2) / 2, (r - 1) / 2, q2);
        return ipow(q, (n * r - r * r - 2) / 2) *
               ((ipow(q, r) + q - 1) * gaussian_binomial((n - 2) / 2, r / 2, q2) +
                (ipow(q, n - r + 1) - ipow(q, n - r) + 1) * gaussian_binomial((n - 2) / 2, (r - 2) / 2, q2));
    }
    if (r_odd) {
        const bool minus = q % 4 == 1 || n % 4 == 0;
        const BigInt middle = minus ? ipow(q, n / 2) - 1 : ipow(q, n / 2) + 1;
        return ipow(q, (n * r - r * r - 1) / 2) * middle * gaussian_binomial((n - 2) / 2, (r - 1) / 2, q2);
    }
    return ipow(q, r * (n - r) / 2) * gaussian_binomial(n / 2, r / 2, q2);
}

BigInt count_field_hermitian(int n, int r, int q1) {
    if (r < 0 || r > n) return 0;
    BigInt num = ipow(q1, r * (n - r)), den = 1;
    for (int i = 0; i < r; ++i) {
        const int sn = (n - i) % 2 == 0 ? 1 : -1, sr = (r - i) % 2 == 0 ? 1 : -1;
        num *= ipow(q1, n - i) - sn;
        den *= ipow(q1, r - i) - sr;
    }
    if (num % den != 0) throw std::logic_error("non-integral Hermitian count");
    return num / den;
}

std::string to_string(Variant v) { return v == Variant::euclidean ? "euclidean" : "hermitian"; }

Variant parse_variant(const std::string& s) {
    if (s == "euclidean") return Variant::euclidean;
    if (s == "hermitian") return Variant::hermitian;
    throw std::invalid_argument("unknown variant '" + s + "' (expected euclidean or hermitian)");
}

int variant_h(const MixedShape& shape, Variant v) {
    if (v == Variant::euclidean) return 0;
    if (shape.ring->w() % 2 != 0) throw std::invalid_argument("the Hermitian variant needs an even residue degree w");
    return shape.ring->w() / 2;
}

BigInt count_mixed_type(const MixedShape& shape, int k0, int l0, Variant v) {
    variant_h(shape, v);
    const int a = shape.a, b = shape.b, e = shape.ring->e(), s = shape.s, q = shape.ring->q();
    if (k0 < 0 || k0 > a || l0 < 0 || l0 > b) return 0;
    auto field_count = [&](int n, int r) -> BigInt {
        if (n == 0) return r == 0 ? 1 : 0;
        if (v == Variant::euclidean) return count_field_euclidean(n, r, q);
        int q1 = 1;
        for (int i = 0; i < shape.ring->w() / 2; ++i) q1 *= shape.ring->p();
        return count_field_hermitian(n, r, q1);
    };
    const int exponent = (a - k0) * (s * l0 + (e - 1) * k0) + (b - l0) * (s * k0 + (s - 1) * l0);
    return field_count(a, k0) * field_count(b, l0) * ipow(q, exponent);
}

BigInt count_mixed_total(const MixedShape& shape, Variant v) {
    BigInt total = 0;
    for (int k0 = 0; k0 <= shape.a; ++k0)
        for (int l0 = 0; l0 <= shape.b; ++l0) total += count_mixed_type(shape, k0, l0, v);
    return total;
}

namespace {

const Field& field_of_order(int q) {
    switch (q) {
        case 2: return Ring::get("Z4").field();
        case 3: return Ring::get("Z9").field();
        case 4: return Ring::get("F4u2").field();
        case 8: return Ring::get("F8u2").field();
        case 9: return Ring::get("F9u2").field();
        default: throw std::invalid_argument("no field of order " + std::to_string(q));
    }
}

// Counts r-dimensional subspaces C of F^n with C ∩ C^perp = {0} under x.sigma(y), where
// sigma is x -> x^conj_exp; every subspace is visited once through its reduced echelon basis.
std::uint64_t census(int n, int r, const Field& f, int h) {
    const int q = f.q();
    std::uint64_t count = 0;
    std::vector<int> piv(r);
    std::function<void(int, int)> choose = [&](int idx, int from) {
        if (idx == r) {
            std::vector<std::pair<int, int>> free_slots;  // (row, col)
            for (int i = 0; i < r; ++i)
                for (int c = piv[i] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_slots.emplace_back(i, c);
            std::uint64_t combos = 1;
            for (std::size_t k = 0; k < free_slots.size(); ++k) combos *= q;
            for (std::uint64_t m = 0; m < combos; ++m) {
                std::vector<std::vector<elem>> g(r, std::vector<elem>(n, 0));
                for (int i = 0; i < r; ++i) g[i][piv[i]] = 1;
                std::uint64_t mm = m;
                for (auto [i, c] : free_slots) {
                    g[i][c] = static_cast<elem>(mm % q);
                    mm /= q;
                }
                std::uint64_t words = 1;
                for (int i = 0; i < r; ++i) words *= q;
                bool lcd = true;
                for (std::uint64_t w = 1; w < words && lcd; ++w) {
                    std::vector<elem> x(n, 0);
                    std::uint64_t ww = w;
                    for (int i = 0; i < r; ++i) {
                        const elem coef = static_cast<elem>(ww % q);
                        ww /= q;
                        for (int c = 0; c < n; ++c) x[c] = f.add(x[c], f.mul(coef, g[i][c]));
                    }
                    bool orth = true;
                    for (int i = 0; i < r && orth; ++i) {
                        elem acc = 0;
                        for (int c = 0; c < n; ++c) acc = f.add(acc, f.mul(x[c], f.frobenius(g[i][c], h)));
                        orth = acc == 0;
                    }
                    if (orth) lcd = false;
                }
                if (lcd) ++count;
            }
            return;
        }
        for (int c = from; c < n; ++c) {
            piv[idx] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
    return count;
}

}  // namespace

std::uint64_t census_field_euclidean(int n, int r, int q) { return census(n, r, field_of_order(q), 0); }

std::uint64_t census_field_hermitian(int n, int r, int q1) {
    const Field& f = field_of_order(q1 * q1);
    if (f.w() % 2 != 0) throw std::invalid_argument("Hermitian census needs an even-degree field");
    return census(n, r, f, f.w() / 2);
}

// ---------------------------------------------------------------- enumeration

BudgetExceeded::BudgetExceeded(std::uint64_t estimate_, std::uint64_t budget)
    : std::runtime_error("budget exceeded: |M| = " + std::to_string(estimate_) + " > budget " +
                         std::to_string(budget)),
      estimate(estimate_) {}

namespace {

// Coordinates k..n-1 of a shape, indexed most-significant-first.
struct Suffix {
    const MixedShape* sh;
    int k;
    std::vector<std::uint32_t> weight;
    std::uint32_t size = 1;

    Suffix(const MixedShape& shape, int from) : sh(&shape), k(from) {
        const int len = shape.n() - from;
        weight.assign(len, 1);
        for (int i = len - 1; i >= 0; --i) {
            weight[i] = size;
            size *= shape.alphabet(from + i);
        }
    }
    int len() const { return static_cast<int>(weight.size()); }
    void decode(std::uint32_t idx, MixedWord& out) const {
        out.resize(len());
        for (int i = 0; i < len(); ++i) {
            out[i] = idx / weight[i];
            idx %= weight[i];
        }
    }
    std::uint32_t encode(const MixedWord& w) const {
        std::uint32_t idx = 0;
        for (int i = 0; i < len(); ++i) idx += w[i] * weight[i];
        return idx;
    }
    elem add(int i, elem x, elem y) const {
        const Ring& r = *sh->ring;
        return k + i < sh->a ? r.add(x, y) : r.reduce(r.add(x, y), sh->s);
    }
    elem mul(int i, elem c, elem x) const {
        const Ring& r = *sh->ring;
        return k + i < sh->a ? r.mul(c, x) : r.reduce(r.mul(c, x), sh->s);
    }
    std::uint32_t add_idx(std::uint32_t x, std::uint32_t y) const {
        MixedWord a, b;
        decode(x, a);
        decode(y, b);
        for (int i = 0; i < len(); ++i) a[i] = add(i, a[i], b[i]);
        return encode(a);
    }
    std::uint32_t scale_idx(elem c, std::uint32_t x) const {
        MixedWord a;
        decode(x, a);
        for (int i = 0; i < len(); ++i) a[i] = mul(i, c, a[i]);
        return encode(a);
    }
};

struct Sub {
    std::vector<std::uint32_t> words;
    std::vector<MixedWord> gens;
};

// Expands every code of the level below coordinate k into the codes of coordinates k..n-1.
void expand(const MixedShape& sh, int k, const Sub* begin, const Sub* end, const std::function<void(Sub&&)>& out) {
    const Ring& r = *sh.ring;
    const Suffix below(sh, k + 1);
    const bool first_block = k < sh.a;
    const int ea = first_block ? r.e() : sh.s;
    const std::uint32_t nb = below.size;
    const elem alpha = first_block ? r.size() : r.quotient_size(sh.s);
    auto reduce_a = [&](elem x) { return first_block ? x : r.reduce(x, sh.s); };

    std::vector<std::int32_t> label(nb);
    std::vector<char> member(nb);
    for (const Sub* c0 = begin; c0 != end; ++c0) {
        std::fill(member.begin(), member.end(), 0);
        for (auto w : c0->words) member[w] = 1;
        // t = e_A: projection onto coordinate k is zero.
        {
            Sub c;
            c.words = c0->words;
            for (const auto& g : c0->gens) {
                MixedWord w{0};
                w.insert(w.end(), g.begin(), g.end());
                c.gens.push_back(std::move(w));
            }
            out(std::move(c));
        }
        // Coset minima of M' / C0.
        std::fill(label.begin(), label.end(), -1);
        std::vector<std::uint32_t> reps;
        for (std::uint32_t x = 0; x < nb; ++x) {
            if (label[x] >= 0) continue;
            reps.push_back(x);
            for (auto c : c0->words) label[below.add_idx(x, c)] = static_cast<std::int32_t>(reps.size() - 1);
        }
        for (int t = 0; t < ea; ++t) {
            const elem gt = r.gamma_pow(t);
            const elem ann = r.gamma_pow(ea - t);
            for (std::uint32_t v : reps) {
                if (!member[below.scale_idx(ann, v)]) continue;
                Sub c;
                // Distinct first coordinates a*gamma^t, each with the coset a*v + C0.
                std::vector<char> seen(alpha, 0);
                for (elem a = 0; a < r.size(); ++a) {
                    const elem f = reduce_a(r.mul(a, gt));
                    if (seen[f]) continue;
                    seen[f] = 1;
                    const std::uint32_t av = below.scale_idx(a, v);
                    for (auto w : c0->words) c.words.push_back(f * nb + below.add_idx(av, w));
                }
                std::sort(c.words.begin(), c.words.end());
                for (const auto& g : c0->gens) {
                    MixedWord w{0};
                    w.insert(w.end(), g.begin(), g.end());
                    c.gens.push_back(std::move(w));
                }
                MixedWord gv{gt};
                MixedWord tail;
                below.decode(v, tail);
                gv.insert(gv.end(), tail.begin(), tail.end());
                c.gens.push_back(std::move(gv));
                out(std::move(c));
            }
        }
    }
}

void check_budget(const MixedShape& shape, std::uint64_t budget) {
    const std::uint64_t size = shape.module_size();
    if (size > budget) throw BudgetExceeded(size, budget);
}

// All submodules on coordinates 1..n-1 (or the single zero code when n = 1).
std::vector<Sub> lower_levels(const MixedShape& shape) {
    std::vector<Sub> level{Sub{{0}, {}}};
    for (int k = shape.n() - 1; k >= 1; --k) {
        std::vector<Sub> next;
        expand(shape, k, level.data(), level.data() + level.size(), [&](Sub&& c) { next.push_back(std::move(c)); });
        level.swap(next);
    }
    return level;
}

// Runs the last expansion in `jobs` contiguous chunks; results concatenated in chunk order.
std::vector<MixedCode> final_level(const MixedShape& shape, const std::vector<Sub>& level, int jobs,
                                   const std::function<bool(const MixedCode&)>& keep) {
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(level.size())));
    std::vector<std::vector<MixedCode>> parts(jobs);
    auto work = [&](int j) {
        const std::size_t lo = level.size() * j / jobs, hi = level.size() * (j + 1) / jobs;
        expand(shape, 0, level.data() + lo, level.data() + hi, [&](Sub&& c) {
            MixedCode code{shape, std::move(c.words), std::move(c.gens)};
            if (keep(code)) parts[j].push_back(std::move(code));
        });
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& th : pool) th.join();
    }
    std::vector<MixedCode> out;
    for (auto& p : parts)
        for (auto& c : p) out.push_back(std::move(c));
    return out;
}

}  // namespace

void enumerate_submodules(const MixedShape& shape, const std::function<void(const MixedCode&)>& sink,
                          std::uint64_t budget) {
    check_budget(shape, budget);
    const auto level = lower_levels(shape);
    expand(shape, 0, level.data(), level.data() + level.size(), [&](Sub&& c) {
        sink(MixedCode{shape, std::move(c.words), std::move(c.gens)});
    });
}

std::vector<MixedCode> enumerate_submodules(const MixedShape& shape, std::uint64_t budget) {
    std::vector<MixedCode> out;
    enumerate_submodules(shape, [&](const MixedCode& c) { out.push_back(c); }, budget);
    return out;
}

std::vector<MixedCode> enumerate_submodules_bfs(const MixedShape& shape, std::uint64_t budget) {
    check_budget(shape, budget);
    Space sp(shape);
    auto key = [](const MixedCode& c) {
        return std::string(reinterpret_cast<const char*>(c.words.data()), c.words.size() * sizeof(std::uint32_t));
    };
    std::vector<MixedCode> out{zero_code(shape)};
    std::unordered_set<std::string> seen{key(out[0])};
    std::vector<char> tried(sp.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const MixedCode cur = out[i];
        std::fill(tried.begin(), tried.end(), 0);
        for (auto w : cur.words) tried[w] = 1;
        MixedWord x, y;
        for (std::uint32_t idx = 0; idx < sp.size(); ++idx) {
            if (tried[idx]) continue;
            sp.word(idx, x);
            // span(C, x) = span(C, x + c); skip the rest of the coset.
            for (auto w : cur.words) {
                sp.word(w, y);
                tried[sp.index(sp.add(x, y))] = 1;
            }
            auto gens = cur.gens;
            gens.push_back(x);
            MixedCode next = span_closure(shape, gens);
            if (seen.insert(key(next)).second) out.push_back(std::move(next));
        }
    }
    return out;
}

std::vector<MixedCode> enumerate_lcd(const MixedShape& shape, int h, std::uint64_t budget, int jobs) {
    check_budget(shape, budget);
    shape.ring->frobenius(0, h);
    const auto level = lower_levels(shape);
    return final_level(shape, level, jobs, [h](const MixedCode& c) { return is_lcd_bruteforce(c, h).is_lcd; });
}

// ---------------------------------------------------------------- classification

namespace {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Greedy generating set of a finite abelian unit group given as a multiplication callback.
template <class Mul>
std::vector<elem> unit_generators(const std::vector<elem>& units, Mul mul) {
    std::vector<elem> gens;
    std::vector<elem> group{1};
    for (elem u : units) {
        if (std::find(group.begin(), group.end(), u) != group.end()) continue;
        gens.push_back(u);
        for (std::size_t i = 0; i < group.size(); ++i) {
            const elem g = mul(group[i], u);
            if (std::find(group.begin(), group.end(), g) == group.end()) group.push_back(g);
        }
        // Close under the new generator repeatedly.
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t i = 0; i < group.size(); ++i)
                for (elem g : gens) {
                    const elem x = mul(group[i], g);
                    if (std::find(group.begin(), group.end(), x) == group.end()) {
                        group.push_back(x);
                        grew = true;
                    }
                }
        }
    }
    return gens;
}

std::string word_key(const std::vector<std::uint32_t>& words) {
    return std::string(reinterpret_cast<const char*>(words.data()), words.size() * sizeof(std::uint32_t));
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

BigInt monomial_group_order(const MixedShape& shape) {
    const BigInt ua = shape.ring->units().size(), ub = shape.quotient().units().size();
    return BigInt(factorial(shape.a)) * factorial(shape.b) * boost::multiprecision::pow(ua, shape.a) *
           boost::multiprecision::pow(ub, shape.b);
}

std::vector<MonomialMap> monomial_generators(const MixedShape& shape) {
    const Ring& r = *shape.ring;
    std::vector<MonomialMap> gens;
    const MonomialMap id = MonomialMap::identity(shape);
    auto perms = [&](int len, bool first) {
        if (len >= 2) {
            MonomialMap t = id;
            auto& p = first ? t.perm_a : t.perm_b;
            std::swap(p[0], p[1]);
            gens.push_back(t);
        }
        if (len >= 3) {
            MonomialMap c = id;
            auto& p = first ? c.perm_a : c.perm_b;
            for (int i = 0; i < len; ++i) p[i] = (i + 1) % len;
            gens.push_back(c);
        }
    };
    perms(shape.a, true);
    perms(shape.b, false);
    if (shape.a > 0)
        for (elem u : unit_generators(r.units(), [&](elem x, elem y) { return r.mul(x, y); })) {
            MonomialMap m = id;
            m.scale_a[0] = u;
            gens.push_back(m);
        }
    if (shape.b > 0) {
        const QuotientView qv = shape.quotient();
        for (elem u : unit_generators(qv.units(), [&](elem x, elem y) { return qv.mul(x, y); })) {
            MonomialMap m = id;
            m.scale_b[0] = u;
            gens.push_back(m);
        }
    }
    return gens;
}

std::vector<MixedCode> monomial_orbit(const MixedCode& c) {
    const auto gens = monomial_generators(c.shape);
    std::vector<MixedCode> orbit{c};
    std::unordered_set<std::string> seen{word_key(c.words)};
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto& g : gens) {
            MixedCode img = apply_monomial(g, orbit[i]);
            if (seen.insert(word_key(img.words)).second) orbit.push_back(std::move(img));
        }
    return orbit;
}

MixedCode canonical_form(const MixedCode& c) {
    const auto orbit = monomial_orbit(c);
    std::size_t best = 0;
    std::string best_fp = fingerprint(orbit[0]);
    for (std::size_t i = 1; i < orbit.size(); ++i) {
        std::string fp = fingerprint(orbit[i]);
        if (fp < best_fp) {
            best_fp = std::move(fp);
            best = i;
        }
    }
    return orbit[best];
}

bool monomially_equivalent(const MixedCode& x, const MixedCode& y) {
    if (!(x.shape == y.shape) || x.size() != y.size()) return false;
    return canonical_form(x).words == canonical_form(y).words;
}

ClassificationResult classify_monomial(const std::vector<MixedCode>& codes) {
    ClassificationResult res;
    if (codes.empty()) return res;
    const MixedShape& sh = codes[0].shape;
    for (const auto& c : codes)
        if (!(c.shape == sh)) throw std::invalid_argument("classify_monomial: mixed shapes");

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < codes.size(); ++i) index.emplace(word_key(codes[i].words), i);
    UnionFind uf(codes.size());
    const auto gens = monomial_generators(sh);
    for (std::size_t i = 0; i < codes.size(); ++i)
        for (const auto& g : gens) {
            auto it = index.find(word_key(apply_monomial(g, codes[i]).words));
            if (it == index.end())
                ++res.closure_violations;
            else
                uf.unite(i, it->second);
        }

    std::vector<std::string> key(codes.size());
    if (res.closure_violations == 0) {
        for (std::size_t i = 0; i < codes.size(); ++i) key[i] = std::to_string(uf.find(i));
    } else {
        // Orbits leave the set: fall back to full canonical forms.
        for (std::size_t i = 0; i < codes.size(); ++i) key[i] = fingerprint(canonical_form(codes[i]));
    }

    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < codes.size(); ++i) groups[key[i]].push_back(i);
    struct Pending {
        std::string fp;
        std::vector<std::size_t> members;
    };
    std::vector<Pending> pending;
    for (auto& [k, members] : groups) {
        std::string best;
        for (auto i : members) {
            std::string fp = fingerprint(codes[i]);
            if (best.empty() || fp < best) best = std::move(fp);
        }
        pending.push_back({best, members});
    }
    std::sort(pending.begin(), pending.end(), [](const Pending& x, const Pending& y) { return x.fp < y.fp; });

    res.class_of.assign(codes.size(), 0);
    for (std::size_t ci = 0; ci < pending.size(); ++ci) {
        ClassInfo info;
        for (auto i : pending[ci].members) {
            res.class_of[i] = ci;
            if (fingerprint(codes[i]) == pending[ci].fp) info.representative = codes[i];
            const auto prof = code_distances(codes[i]);
            if (prof.min_lee) ++info.orbit_lee[*prof.min_lee];
        }
        info.orbit_size = pending[ci].members.size();
        const auto prof = code_distances(info.representative);
        info.lee_distance = prof.min_lee;
        info.hamming_distance = prof.min_hamming;
        info.generator = standard_form(info.representative).generator;
        info.type = code_type(info.representative);
        res.classes.push_back(std::move(info));
    }
    return res;
}

// ---------------------------------------------------------------- reference tables

std::optional<TableValue> reference_table(const MixedShape& shape, Variant v) {
    struct Row {
        const char* ring;
        Variant v;
        int a, b;
        TableValue value;
    };
    static const Row rows[] = {
        {"Z4", Variant::euclidean, 1, 1, {5, 5}},        {"Z4", Variant::euclidean, 1, 2, {17, 11}},
        {"Z4", Variant::euclidean, 2, 1, {25, 15}},      {"Z4", Variant::euclidean, 2, 2, {113, 41}},
        {"Z4", Variant::euclidean, 3, 1, {209, 49}},     {"Z4", Variant::euclidean, 3, 2, {1301, 163}},
        {"Z9", Variant::euclidean, 1, 1, {7, 5}},        {"Z9", Variant::euclidean, 1, 2, {43, 15}},
        {"Z9", Variant::euclidean, 2, 1, {91, 19}},      {"Z9", Variant::euclidean, 2, 2, {883, 71}},
        {"Z9", Variant::euclidean, 3, 1, {1351, 53}},    {"Z9", Variant::euclidean, 3, 2, {33751, 336}},
        {"F4u2", Variant::hermitian, 1, 1, {9, 5}},      {"F4u2", Variant::hermitian, 1, 2, {65, 11}},
        {"F4u2", Variant::hermitian, 2, 1, {225, 15}},   {"F4u2", Variant::hermitian, 2, 2, {3777, 43}},
    };
    if (shape.s != 1) return std::nullopt;
    for (const auto& r : rows)
        if (shape.ring->name() == r.ring && v == r.v && shape.a == r.a && shape.b == r.b) return r.value;
    return std::nullopt;
}

CountReport count_report(const MixedShape& shape, Variant v, bool bruteforce, bool classify, std::uint64_t budget,
                         int jobs) {
    CountReport rep;
    rep.shape = shape;
    rep.variant = v;
    const int h = variant_h(shape, v);
    BigInt total = 0;
    for (int k0 = 0; k0 <= shape.a; ++k0)
        for (int l0 = 0; l0 <= shape.b; ++l0) {
            CountRow row{k0, l0, count_mixed_type(shape, k0, l0, v), std::nullopt};
            total += row.formula;
            rep.rows.push_back(row);
        }
    rep.formula_nonzero = total - 1;
    rep.table = reference_table(shape, v);

    if (bruteforce) {
        auto lcd = enumerate_lcd(shape, h, budget, jobs);
        for (auto& row : rep.rows) row.bruteforce = 0;
        std::vector<MixedCode> nonzero;
        for (auto& c : lcd) {
            const StandardForm sf = standard_form(c);
            if (!sf.weakly_free) {
                rep.mismatches.push_back("LCD code that is not weakly-free");
                continue;
            }
            ++*rep.rows[sf.k0 * (shape.b + 1) + sf.l0].bruteforce;
            if (c.size() > 1) nonzero.push_back(std::move(c));
        }
        rep.bruteforce_nonzero = nonzero.size();
        if (classify) {
            const auto cls = classify_monomial(nonzero);
            rep.bruteforce_classes = cls.classes.size();
            if (cls.closure_violations)
                rep.mismatches.push_back("LCD set not closed under monomial maps (" +
                                         std::to_string(cls.closure_violations) + " images)");
        }
        for (const auto& row : rep.rows)
            if (BigInt(*row.bruteforce) != row.formula)
                rep.mismatches.push_back("type (" + std::to_string(row.k0) + "," + std::to_string(row.l0) +
                                         "): formula " + row.formula.str() + " vs brute force " +
                                         std::to_string(*row.bruteforce));
        if (BigInt(*rep.bruteforce_nonzero) != rep.formula_nonzero)
            rep.mismatches.push_back("total: formula " + rep.formula_nonzero.str() + " vs brute force " +
                                     std::to_string(*rep.bruteforce_nonzero));
    }
    if (rep.table) {
        if (BigInt(rep.table->nonzero) != rep.formula_nonzero)
            rep.mismatches.push_back("total: formula " + rep.formula_nonzero.str() + " vs table " +
                                     std::to_string(rep.table->nonzero));
        if (rep.bruteforce_nonzero && *rep.bruteforce_nonzero != rep.table->nonzero)
            rep.mismatches.push_back("total: brute force " + std::to_string(*rep.bruteforce_nonzero) + " vs table " +
                                     std::to_string(rep.table->nonzero));
        if (rep.bruteforce_classes && *rep.bruteforce_classes != rep.table->classes)
            rep.mismatches.push_back("classes: brute force " + std::to_string(*rep.bruteforce_classes) +
                                     " vs table " + std::to_string(rep.table->classes));
    }
    return rep;
}

// ---------------------------------------------------------------- appendix lists

AppendixFile parse_appendix_text(std::string_view text) {
    AppendixFile f;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    std::string ring;
    int s = 0, a = -1, b = -1;
    bool have_shape = false;
    AppendixEntry* cur = nullptr;
    auto trim = [](std::string x) {
        if (auto hash = x.find('#'); hash != std::string::npos) x.erase(hash);
        const auto l = x.find_first_not_of(" \t\r");
        if (l == std::string::npos) return std::string();
        return x.substr(l, x.find_last_not_of(" \t\r") - l + 1);
    };
    while (std::getline(in, raw)) {
        ++line;
        const std::string t = trim(raw);
        if (t.empty()) {
            cur = nullptr;
            continue;
        }
        std::istringstream ts(t);
        std::string head;
        ts >> head;
        try {
            if (!have_shape) {
                if (head == "ring")
                    ts >> ring;
                else if (head == "s")
                    ts >> s;
                else if (head == "blocks")
                    ts >> a >> b;
                else
                    throw std::invalid_argument("expected ring/s/blocks header, got '" + head + "'");
                if (!ts && !ts.eof()) throw std::invalid_argument("malformed header line");
                if (!ring.empty() && s > 0 && a >= 0 && b >= 0) {
                    f.shape = make_shape(ring, s, a, b);
                    have_shape = true;
                }
                continue;
            }
            if (head == "h") {
                ts >> f.h;
                continue;
            }
            if (head == "classes") {
                int n = 0;
                ts >> n;
                f.claimed_classes = n;
                continue;
            }
        } catch (const std::exception& ex) {
            f.errors.push_back("line " + std::to_string(line) + ": " + ex.what());
            continue;
        }
        if (head == "lee") {
            AppendixEntry e;
            e.line = line;
            e.matrix.shape = f.shape;
            int d = 0;
            if (ts >> d)
                e.claimed_lee = d;
            else
                e.parse_error = "line " + std::to_string(line) + ": expected 'lee <int>'";
            f.entries.push_back(std::move(e));
            cur = &f.entries.back();
            continue;
        }
        if (!cur) {
            f.errors.push_back("line " + std::to_string(line) + ": row outside an entry");
            continue;
        }
        if (!cur->parse_error.empty()) continue;
        try {
            cur->matrix.rows.push_back(parse_row(f.shape, t, line));
        } catch (const ParseError& ex) {
            cur->parse_error = ex.what();
        }
    }
    if (!have_shape) f.errors.push_back("missing ring/s/blocks header");
    return f;
}

AppendixFile parse_appendix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_appendix_text(ss.str());
}

bool AppendixReport::all_pass() const {
    if (!errors.empty() || (completeness_checked && missing_classes != 0)) return false;
    for (const auto& e : entries)
        if (!e.parse_error.empty() || !e.lcd || !e.lee_ok || !e.inequivalent || (e.complete && !*e.complete))
            return false;
    return true;
}

AppendixReport verify_appendix(const AppendixFile& file, bool check_completeness, std::uint64_t budget, int jobs) {
    AppendixReport rep;
    rep.shape = file.shape;
    rep.h = file.h;
    rep.errors = file.errors;
    if (!file.shape.ring) return rep;
    const MixedShape& sh = file.shape;

    std::vector<std::optional<MixedCode>> codes(file.entries.size());
    for (std::size_t i = 0; i < file.entries.size(); ++i) {
        const auto& e = file.entries[i];
        EntryVerdict v;
        v.line = e.line;
        v.parse_error = e.parse_error;
        if (v.parse_error.empty()) {
            try {
                MixedCode c = span_closure(sh, e.matrix.rows);
                v.lcd = is_lcd_bruteforce(c, file.h).is_lcd;
                v.lee = code_distances(c).min_lee;
                v.lee_ok = v.lee && e.claimed_lee && *v.lee == *e.claimed_lee;
                codes[i] = std::move(c);
            } catch (const std::exception& ex) {
                v.parse_error = "line " + std::to_string(e.line) + ": " + ex.what();
            }
        }
        rep.entries.push_back(std::move(v));
    }

    // Orbit keys: census class ids when available, otherwise canonical forms.
    std::vector<std::string> key(codes.size());
    bool census = false;
    ClassificationResult cls;
    std::unordered_map<std::string, std::size_t> census_index;
    if (check_completeness && sh.module_size() <= budget) {
        auto lcd = enumerate_lcd(sh, file.h, budget, jobs);
        std::vector<MixedCode> nonzero;
        for (auto& c : lcd)
            if (c.size() > 1) nonzero.push_back(std::move(c));
        cls = classify_monomial(nonzero);
        for (std::size_t i = 0; i < nonzero.size(); ++i) census_index.emplace(word_key(nonzero[i].words), i);
        census = true;
        rep.completeness_checked = true;
        rep.census_classes = cls.classes.size();
    }
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (!codes[i]) continue;
        if (census) {
            auto it = census_index.find(word_key(codes[i]->words));
            if (it != census_index.end()) {
                key[i] = "class:" + std::to_string(cls.class_of[it->second]);
                continue;
            }
        }
        key[i] = "canon:" + fingerprint(canonical_form(*codes[i]));
    }
    std::map<std::string, std::vector<std::size_t>> by_key;
    for (std::size_t i = 0; i < codes.size(); ++i)
        if (codes[i]) by_key[key[i]].push_back(i);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (!codes[i]) continue;
        const auto& same = by_key[key[i]];
        rep.entries[i].inequivalent = same.size() == 1;
        for (auto j : same)
            if (j != i) {
                rep.entries[i].equivalent_to = static_cast<int>(j);
                break;
            }
    }
    if (census) {
        std::vector<char> hit(cls.classes.size(), 0);
        for (std::size_t i = 0; i < codes.size(); ++i) {
            if (!codes[i]) continue;
            const bool in_census = key[i].rfind("class:", 0) == 0;
            rep.entries[i].complete = in_census && rep.entries[i].inequivalent;
            if (in_census) hit[std::stoul(key[i].substr(6))] = 1;
        }
        rep.missing_classes = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 0));
    }
    return rep;
}

}  // namespace chainlcd
