#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chainlcd {

/// Packed element code. Field elements are coefficient vectors read base p;
/// ring elements of F_{p^w}[u]/u^e are sum a_i q^i with a_i field codes;
/// elements of Z_{p^e} are the integers themselves.
using elem = std::uint32_t;

/// Finite field F_{p^w} with fixed defining polynomial.
class Field {
public:
    /// `modulus` is monic, low-to-high coefficients, degree w.
    Field(int p, int w, std::vector<int> modulus);

    int p() const { return p_; }
    int w() const { return w_; }
    int q() const { return q_; }

    elem add(elem x, elem y) const { return add_[x * q_ + y]; }
    elem sub(elem x, elem y) const { return add_[x * q_ + neg_[y]]; }
    elem neg(elem x) const { return neg_[x]; }
    elem mul(elem x, elem y) const { return mul_[x * q_ + y]; }
    /// Throws std::domain_error("not a unit") for zero.
    elem inv(elem x) const;
    elem pow(elem x, std::uint64_t k) const;
    /// x -> x^{p^h}.
    elem frobenius(elem x, int h) const;

    /// `0`, `1`, `w`, `w2`, ... for extension fields; integers for prime fields.
    std::string render(elem x) const;
    /// Accepts the rendered names, `w^k`, and prime-field integers.
    elem parse(std::string_view token) const;

private:
    int p_, w_, q_;
    std::vector<int> modulus_;
    std::vector<elem> add_, mul_, neg_, inv_, log_, exp_;
};

enum class Family { integer_residue, polynomial_residue };

/// A finite chain ring Z_{p^e} or F_{p^w}[u]/<u^e> with tabulated arithmetic.
class Ring {
public:
    /// Registry lookup by spec string (`Z4`, `Z8`, `Z9`, `Z27`, `F4u2`, `F8u2`, `F9u2`).
    /// Throws std::invalid_argument for unknown names.
    static const Ring& get(std::string_view name);
    static std::vector<std::string> supported();

    Ring(std::string name, Family family, int p, int w, int e, std::vector<int> modulus);
    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

    const std::string& name() const { return name_; }
    Family family() const { return family_; }
    int p() const { return p_; }
    int w() const { return field_.w(); }
    int e() const { return e_; }
    int q() const { return field_.q(); }
    elem size() const { return size_; }
    const Field& field() const { return field_; }

    elem gamma() const { return gamma_pow(1); }
    /// gamma^k, zero for k >= e.
    elem gamma_pow(int k) const { return k >= e_ ? 0 : gpow_[k]; }
    /// Size of R / gamma^s R, i.e. q^s.
    elem quotient_size(int s) const { return qpow_[s]; }

    elem add(elem x, elem y) const { return add_[x * size_ + y]; }
    elem sub(elem x, elem y) const { return add_[x * size_ + neg_[y]]; }
    elem neg(elem x) const { return neg_[x]; }
    elem mul(elem x, elem y) const { return mul_[x * size_ + y]; }
    bool is_unit(elem x) const { return val_[x] == 0; }
    /// Throws std::domain_error("not a unit").
    elem inv(elem x) const;

    /// Largest k with x in gamma^k R; e for zero.
    int valuation(elem x) const { return val_[x]; }
    /// The canonical y with gamma^k y = x (requires valuation(x) >= k).
    elem div_gamma(elem x, int k) const;

    /// sigma^h, coefficient-wise x -> x^{p^h}. Throws std::out_of_range unless 0 <= h < w.
    elem frobenius(elem x, int h) const;

    elem residue(elem x) const;
    elem teich_lift(elem f) const { return teich_[f]; }
    std::vector<elem> teich_set() const;

    /// Canonical representative modulo gamma^s.
    elem reduce(elem x, int s) const { return x % qpow_[s]; }

    std::vector<elem> units() const;

    std::string render(elem x) const;
    /// Throws std::invalid_argument naming the token.
    elem parse(std::string_view token) const;

private:
    std::string name_;
    Family family_;
    int p_, e_;
    Field field_;
    elem size_;
    std::vector<elem> qpow_, gpow_;
    std::vector<elem> add_, mul_, neg_, inv_, teich_;
    std::vector<int> val_;
};

/// Ring element tagged with its ring, for checked arithmetic.
struct RingElement {
    const Ring* ring = nullptr;
    elem value = 0;
    bool operator==(const RingElement&) const = default;
};

enum class ArithOp { add, mul, neg, inv };

/// Checked arithmetic; throws on mixed-ring operands, missing operands, or non-units for inv.
RingElement ring_arith(const Ring& ring, ArithOp op, RingElement x,
                       std::optional<RingElement> y = std::nullopt);

int gamma_valuation(const Ring& ring, elem x);
elem frobenius(const Ring& ring, elem x, int h);

/// The quotient R / gamma^s R, represented through its parent ring.
class QuotientView {
public:
    /// Throws std::invalid_argument unless 1 <= s < e.
    QuotientView(const Ring& ring, int s);

    const Ring& ring() const { return *ring_; }
    int s() const { return s_; }
    elem size() const { return ring_->quotient_size(s_); }
    /// `Z2`, `F4`, `Z9`, `F4u1`-style names of R / gamma^s R.
    std::string name() const;

    elem reduce(elem x) const { return ring_->reduce(x, s_); }
    elem lift(elem a) const { return a; }
    /// gamma^{e-s} * lift(a).
    elem iota(elem a) const { return ring_->mul(ring_->gamma_pow(ring_->e() - s_), a); }

    elem add(elem x, elem y) const { return reduce(ring_->add(x, y)); }
    elem sub(elem x, elem y) const { return reduce(ring_->sub(x, y)); }
    elem neg(elem x) const { return reduce(ring_->neg(x)); }
    elem mul(elem x, elem y) const { return reduce(ring_->mul(x, y)); }
    int valuation(elem x) const;
    bool is_unit(elem x) const { return ring_->is_unit(x); }
    std::vector<elem> units() const;

private:
    const Ring* ring_;
    int s_;
};

}  // namespace chainlcd
