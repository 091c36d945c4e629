#include "chainlcd/ring.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <stdexcept>

namespace chainlcd {

namespace {

std::vector<int> digits(elem x, int base, int count) {
    std::vector<int> d(count);
    for (int i = 0; i < count; ++i) {
        d[i] = static_cast<int>(x % base);
        x /= base;
    }
    return d;
}

elem undigits(const std::vector<int>& d, int base) {
    elem x = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * base + d[i];
    return x;
}

bool parse_uint(std::string_view s, long& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

// ---------------------------------------------------------------- Field

Field::Field(int p, int w, std::vector<int> modulus) : p_(p), w_(w), q_(1), modulus_(std::move(modulus)) {
    for (int i = 0; i < w; ++i) q_ *= p;
    if (static_cast<int>(modulus_.size()) != w + 1 || modulus_.back() != 1)
        throw std::invalid_argument("defining polynomial must be monic of degree w");
    const auto n = static_cast<std::size_t>(q_);
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    inv_.assign(n, 0);
    for (int x = 0; x < q_; ++x) {
        auto dx = digits(x, p, w);
        std::vector<int> dn(w);
        for (int i = 0; i < w; ++i) dn[i] = (p - dx[i]) % p;
        neg_[x] = undigits(dn, p);
        for (int y = 0; y < q_; ++y) {
            auto dy = digits(y, p, w);
            std::vector<int> ds(w);
            for (int i = 0; i < w; ++i) ds[i] = (dx[i] + dy[i]) % p;
            add_[x * n + y] = undigits(ds, p);
            std::vector<int> prod(2 * w, 0);
            for (int i = 0; i < w; ++i)
                for (int j = 0; j < w; ++j) prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
            for (int k = 2 * w - 1; k >= w; --k) {
                const int c = prod[k];
                if (c == 0) continue;
                prod[k] = 0;
                for (int i = 0; i < w; ++i)
                    prod[k - w + i] = ((prod[k - w + i] - c * modulus_[i]) % p + p) % p;
            }
            prod.resize(w);
            mul_[x * n + y] = undigits(prod, p);
        }
    }
    for (int x = 1; x < q_; ++x)
        for (int y = 1; y < q_; ++y)
            if (mul_[x * n + y] == 1) inv_[x] = y;

    if (w_ > 1) {
        // The class of x must generate the multiplicative group.
        const elem gen = static_cast<elem>(p_);
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        elem cur = 1;
        for (int k = 0; k < q_ - 1; ++k) {
            if (k > 0 && cur == 1) throw std::invalid_argument("defining polynomial is not primitive");
            exp_[k] = cur;
            log_[cur] = k;
            cur = mul(cur, gen);
        }
        if (cur != 1) throw std::invalid_argument("defining polynomial is not primitive");
    }
}

elem Field::inv(elem x) const {
    if (x == 0) throw std::domain_error("not a unit");
    return inv_[x];
}

elem Field::pow(elem x, std::uint64_t k) const {
    elem r = 1;
    while (k) {
        if (k & 1) r = mul(r, x);
        x = mul(x, x);
        k >>= 1;
    }
    return r;
}

elem Field::frobenius(elem x, int h) const {
    for (int i = 0; i < h; ++i) x = pow(x, p_);
    return x;
}

std::string Field::render(elem x) const {
    if (w_ == 1 || x <= 1) return std::to_string(x);
    const elem k = log_[x];
    return k == 1 ? "w" : "w" + std::to_string(k);
}

elem Field::parse(std::string_view t) const {
    long v = 0;
    if (parse_uint(t, v)) {
        if (v < 0 || v >= p_) throw std::invalid_argument("field element '" + std::string(t) + "' out of range");
        return static_cast<elem>(v);
    }
    if (w_ > 1 && !t.empty() && t[0] == 'w') {
        std::string_view rest = t.substr(1);
        if (!rest.empty() && rest[0] == '^') rest = rest.substr(1);
        long k = 1;
        if (rest.empty() || (parse_uint(rest, k) && k >= 0)) return exp_[k % (q_ - 1)];
    }
    throw std::invalid_argument("bad field element '" + std::string(t) + "'");
}

// ---------------------------------------------------------------- Ring

Ring::Ring(std::string name, Family family, int p, int w, int e, std::vector<int> modulus)
    : name_(std::move(name)), family_(family), p_(p), e_(e), field_(p, w, std::move(modulus)) {
    if (family == Family::integer_residue && w != 1)
        throw std::invalid_argument("integer-residue rings have w = 1");
    const int q = field_.q();
    qpow_.assign(e + 1, 1);
    for (int i = 1; i <= e; ++i) qpow_[i] = qpow_[i - 1] * q;
    size_ = qpow_[e];
    // gamma^k has code p^k (integers) or q^k (u-adic digits); both equal qpow_ since q = p when w = 1.
    gpow_.assign(e, 0);
    for (int k = 0; k < e; ++k) gpow_[k] = qpow_[k];

    const auto n = static_cast<std::size_t>(size_);
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    val_.resize(n);
    inv_.assign(n, 0);
    if (family == Family::integer_residue) {
        for (elem x = 0; x < size_; ++x) {
            neg_[x] = (size_ - x) % size_;
            int v = 0;
            for (elem y = x; v < e && y % p == 0; y /= p) ++v;
            val_[x] = x == 0 ? e : v;
            for (elem y = 0; y < size_; ++y) {
                add_[x * n + y] = (x + y) % size_;
                mul_[x * n + y] = static_cast<elem>((static_cast<std::uint64_t>(x) * y) % size_);
            }
        }
    } else {
        for (elem x = 0; x < size_; ++x) {
            auto dx = digits(x, q, e);
            std::vector<int> dn(e);
            int v = e;
            for (int i = 0; i < e; ++i) {
                dn[i] = static_cast<int>(field_.neg(dx[i]));
                if (dx[i] != 0 && v == e) v = i;
            }
            neg_[x] = undigits(dn, q);
            val_[x] = v;
            for (elem y = 0; y < size_; ++y) {
                auto dy = digits(y, q, e);
                std::vector<int> ds(e), dm(e, 0);
                for (int i = 0; i < e; ++i) ds[i] = static_cast<int>(field_.add(dx[i], dy[i]));
                for (int i = 0; i < e; ++i)
                    for (int j = 0; i + j < e; ++j)
                        dm[i + j] = static_cast<int>(field_.add(dm[i + j], field_.mul(dx[i], dy[j])));
                add_[x * n + y] = undigits(ds, q);
                mul_[x * n + y] = undigits(dm, q);
            }
        }
    }
    for (elem x = 0; x < size_; ++x) {
        if (val_[x] != 0) continue;
        for (elem y = 0; y < size_; ++y)
            if (mul_[x * n + y] == 1) {
                inv_[x] = y;
                break;
            }
    }
    // Teichmueller representatives: the q solutions of x^q = x.
    teich_.assign(q, 0);
    for (elem x = 0; x < size_; ++x) {
        elem r = 1;
        for (int i = 0; i < q; ++i) r = mul(r, x);
        if (r == x) teich_[residue(x)] = x;
    }
}

const Ring& Ring::get(std::string_view name) {
    static const std::map<std::string, std::unique_ptr<Ring>, std::less<>> registry = [] {
        std::map<std::string, std::unique_ptr<Ring>, std::less<>> m;
        auto put = [&m](const char* n, Family f, int p, int w, int e, std::vector<int> mod) {
            m.emplace(n, std::make_unique<Ring>(n, f, p, w, e, std::move(mod)));
        };
        put("Z4", Family::integer_residue, 2, 1, 2, {0, 1});
        put("Z8", Family::integer_residue, 2, 1, 3, {0, 1});
        put("Z9", Family::integer_residue, 3, 1, 2, {0, 1});
        put("Z27", Family::integer_residue, 3, 1, 3, {0, 1});
        put("F4u2", Family::polynomial_residue, 2, 2, 2, {1, 1, 1});
        put("F8u2", Family::polynomial_residue, 2, 3, 2, {1, 1, 0, 1});
        put("F9u2", Family::polynomial_residue, 3, 2, 2, {2, 1, 1});
        return m;
    }();
    auto it = registry.find(name);
    if (it == registry.end()) throw std::invalid_argument("unknown ring spec '" + std::string(name) + "'");
    return *it->second;
}

std::vector<std::string> Ring::supported() { return {"Z4", "Z8", "Z9", "Z27", "F4u2", "F8u2", "F9u2"}; }

elem Ring::inv(elem x) const {
    if (x >= size_ || val_[x] != 0) throw std::domain_error("not a unit");
    return inv_[x];
}

elem Ring::div_gamma(elem x, int k) const {
    if (val_[x] < k) throw std::domain_error("element not divisible by gamma^" + std::to_string(k));
    if (k >= e_) return 0;
    return x / qpow_[k];
}

elem Ring::frobenius(elem x, int h) const {
    if (h < 0 || h >= w()) throw std::out_of_range("Frobenius power h out of range [0, w)");
    if (h == 0 || family_ == Family::integer_residue) return x;
    auto d = digits(x, q(), e_);
    for (auto& c : d) c = static_cast<int>(field_.frobenius(c, h));
    return undigits(d, q());
}

elem Ring::residue(elem x) const { return x % static_cast<elem>(q()); }

std::vector<elem> Ring::teich_set() const {
    std::vector<elem> t(teich_);
    std::sort(t.begin(), t.end());
    return t;
}

std::vector<elem> Ring::units() const {
    std::vector<elem> u;
    for (elem x = 0; x < size_; ++x)
        if (val_[x] == 0) u.push_back(x);
    return u;
}

std::string Ring::render(elem x) const {
    if (family_ == Family::integer_residue) return std::to_string(x);
    auto d = digits(x, q(), e_);
    std::string out;
    for (int i = 0; i < e_; ++i) {
        if (d[i] == 0) continue;
        std::string term;
        if (i == 0) {
            term = field_.render(d[i]);
        } else {
            if (d[i] != 1) term = field_.render(d[i]) + "*";
            term += i == 1 ? "u" : "u^" + std::to_string(i);
        }
        if (!out.empty()) out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

elem Ring::parse(std::string_view t) const {
    const auto bad = [&] { return std::invalid_argument("bad element '" + std::string(t) + "' for ring " + name_); };
    if (t.empty()) throw bad();
    if (family_ == Family::integer_residue) {
        bool negative = t[0] == '-';
        long v = 0;
        if (!parse_uint(negative ? t.substr(1) : t, v) || v < 0 || v >= static_cast<long>(size_)) throw bad();
        return negative ? neg(static_cast<elem>(v)) : static_cast<elem>(v);
    }
    std::vector<int> d(e_, 0);
    std::size_t pos = 0;
    while (pos <= t.size()) {
        std::size_t plus = t.find('+', pos);
        if (plus == std::string_view::npos) plus = t.size();
        std::string_view term = t.substr(pos, plus - pos);
        if (term.empty()) throw bad();
        std::string_view coeff = term;
        int power = 0;
        const std::size_t upos = term.find('u');
        if (upos != std::string_view::npos) {
            std::string_view upart = term.substr(upos);
            coeff = term.substr(0, upos);
            if (!coeff.empty()) {
                if (coeff.back() != '*') throw bad();
                coeff.remove_suffix(1);
                if (coeff.empty()) throw bad();
            }
            power = 1;
            if (upart.size() > 1) {
                long k = 0;
                if (upart[1] != '^' || !parse_uint(upart.substr(2), k) || k < 1) throw bad();
                power = static_cast<int>(k);
            }
        }
        elem c = 1;
        if (!coeff.empty()) {
            try {
                c = field_.parse(coeff);
            } catch (const std::invalid_argument&) {
                throw bad();
            }
        }
        if (power < e_) d[power] = static_cast<int>(field_.add(d[power], c));
        pos = plus + 1;
    }
    return undigits(d, q());
}

// ---------------------------------------------------------------- free functions

RingElement ring_arith(const Ring& ring, ArithOp op, RingElement x, std::optional<RingElement> y) {
    auto check = [&ring](const RingElement& v) {
        if (v.ring != &ring) throw std::invalid_argument("mixed-ring operands");
        if (v.value >= ring.size()) throw std::invalid_argument("element out of range");
    };
    check(x);
    if (op == ArithOp::add || op == ArithOp::mul) {
        if (!y) throw std::invalid_argument("binary operation needs two operands");
        check(*y);
    }
    switch (op) {
        case ArithOp::add: return {&ring, ring.add(x.value, y->value)};
        case ArithOp::mul: return {&ring, ring.mul(x.value, y->value)};
        case ArithOp::neg: return {&ring, ring.neg(x.value)};
        case ArithOp::inv: return {&ring, ring.inv(x.value)};
    }
    throw std::logic_error("unreachable");
}

int gamma_valuation(const Ring& ring, elem x) { return ring.valuation(x); }

elem frobenius(const Ring& ring, elem x, int h) { return ring.frobenius(x, h); }

// ---------------------------------------------------------------- QuotientView

QuotientView::QuotientView(const Ring& ring, int s) : ring_(&ring), s_(s) {
    if (s < 1 || s >= ring.e()) throw std::invalid_argument("quotient exponent s must satisfy 1 <= s < e");
}

std::string QuotientView::name() const {
    if (ring_->family() == Family::integer_residue) {
        int n = 1;
        for (int i = 0; i < s_; ++i) n *= ring_->p();
        return "Z" + std::to_string(n);
    }
    const std::string f = "F" + std::to_string(ring_->q());
    return s_ == 1 ? f : f + "u" + std::to_string(s_);
}

int QuotientView::valuation(elem x) const { return std::min(ring_->valuation(reduce(x)), s_); }

std::vector<elem> QuotientView::units() const {
    std::vector<elem> u;
    for (elem x = 0; x < size(); ++x)
        if (ring_->is_unit(x)) u.push_back(x);
    return u;
}

}  // namespace chainlcd
