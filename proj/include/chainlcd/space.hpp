#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chainlcd/matrix.hpp"
#include "chainlcd/ring.hpp"

namespace chainlcd {

/// Block lengths of M = R^a (+) Rcheck^b with Rcheck = R / gamma^s R.
struct MixedShape {
    const Ring* ring = nullptr;
    int s = 1;
    int a = 0, b = 0;

    int n() const { return a + b; }
    QuotientView quotient() const { return QuotientView(*ring, s); }
    /// Alphabet size of coordinate i.
    elem alphabet(int i) const { return i < a ? ring->size() : ring->quotient_size(s); }
    /// |M| (may exceed 32 bits).
    std::uint64_t module_size() const;
    std::string str() const;
    bool operator==(const MixedShape& o) const { return ring == o.ring && s == o.s && a == o.a && b == o.b; }
};

/// Throws std::invalid_argument for an unknown ring, s outside [1, e) or n < 1.
MixedShape make_shape(std::string_view ring, int s, int a, int b);

/// First block (a entries over R) followed by the second block (b entries over Rcheck).
using MixedWord = std::vector<elem>;

struct MixedMatrix {
    MixedShape shape;
    std::vector<MixedWord> rows;
    bool operator==(const MixedMatrix& o) const { return shape == o.shape && rows == o.rows; }
};

/// {k_0, ..., k_{e-1}; l_0, ..., l_{s-1}}.
struct CodeType {
    std::vector<int> k, l;
    bool weakly_free() const;
    std::string str() const;
    bool operator==(const CodeType& o) const { return k == o.k && l == o.l; }
};

/// An R-submodule of M stored as its sorted codeword index set.
struct MixedCode {
    MixedShape shape;
    std::vector<std::uint32_t> words;  ///< sorted, see Space::index
    std::vector<MixedWord> gens;       ///< a generating set

    std::size_t size() const { return words.size(); }
    bool contains(std::uint32_t idx) const;
    bool contains(const MixedWord& w) const;
    bool operator==(const MixedCode& o) const { return shape == o.shape && words == o.words; }
};

/// Mixed-radix indexing of M (coordinate 0 most significant) and word arithmetic.
class Space {
public:
    /// Throws std::length_error if |M| does not fit in 32 bits.
    explicit Space(const MixedShape& shape);

    const MixedShape& shape() const { return shape_; }
    std::uint64_t size() const { return size_; }
    std::uint32_t index(const MixedWord& w) const;
    MixedWord word(std::uint32_t idx) const;
    void word(std::uint32_t idx, MixedWord& out) const;

    MixedWord add(const MixedWord& x, const MixedWord& y) const;
    MixedWord sub(const MixedWord& x, const MixedWord& y) const;
    MixedWord neg(const MixedWord& x) const;
    /// r * m with r in R; second-block products reduced mod gamma^s.
    MixedWord scale(elem r, const MixedWord& m) const;
    bool is_zero(const MixedWord& m) const;
    /// Throws std::invalid_argument if an entry is outside its alphabet.
    void validate(const MixedWord& m) const;

private:
    MixedShape shape_;
    std::uint64_t size_;
    std::vector<std::uint32_t> weight_;
};

/// <m1, m2>_h = sum c_i sigma^h(c'_i) + gamma^{e-s} sum d_j sigma^h(d'_j), evaluated entry by entry.
elem galois_inner(const MixedShape& shape, const MixedWord& m1, const MixedWord& m2, int h);
/// G diamond sigma^h(H)^T = E sigma^h(U)^T + iota(F sigma^h(V)^T), by block matrix products.
RingMatrix diamond(const MixedMatrix& g, const MixedMatrix& hm, int h);

/// Smallest submodule containing the generators.
MixedCode span_closure(const MixedShape& shape, const std::vector<MixedWord>& gens);
/// Code from its codeword index set; generators are extracted greedily.
MixedCode code_from_words(const MixedShape& shape, std::vector<std::uint32_t> words);
MixedCode zero_code(const MixedShape& shape);
MixedCode full_module(const MixedShape& shape);

CodeType code_type(const MixedCode& c);

struct StandardForm {
    std::vector<int> perm_a, perm_b;  ///< new column i holds old column perm[i]
    MixedMatrix matrix;                ///< generator in permuted coordinates
    MixedMatrix generator;             ///< the same rows in original coordinates
    bool weakly_free = false;
    int k0 = 0, l0 = 0;                ///< unit-pivot rows found in each block
};

StandardForm standard_form(const MixedCode& c);

/// C^{perp_h}; exact, computed by splitting M into two halves and matching partial inner products.
MixedCode dual_code(const MixedCode& c, int h);
/// The same set by a flat scan over M (small shapes only).
MixedCode dual_code_scan(const MixedCode& c, int h);

/// Sorted codeword indices (little-endian uint32) prefixed by the shape.
std::string fingerprint(const MixedCode& c);

/// Block-respecting monomial map: image position i takes scale[i] * m[perm[i]].
struct MonomialMap {
    std::vector<int> perm_a, perm_b;
    std::vector<elem> scale_a, scale_b;
    static MonomialMap identity(const MixedShape& shape);
    bool operator==(const MonomialMap&) const = default;
};

MixedWord apply_monomial(const MixedShape& shape, const MonomialMap& mu, const MixedWord& m);
MixedCode apply_monomial(const MonomialMap& mu, const MixedCode& c);
/// (mu o nu)(m) = mu(nu(m)).
MonomialMap compose(const MixedShape& shape, const MonomialMap& mu, const MonomialMap& nu);
MonomialMap inverse(const MixedShape& shape, const MonomialMap& mu);

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line_, int column_, const std::string& msg);
};

/// Code file: `ring <spec>`, `s <int>`, `blocks <a> <b>`, then rows `x .. | y ..`.
/// Blank lines and `#` comments are ignored.
MixedMatrix parse_code_text(std::string_view text);
MixedMatrix parse_code_file(const std::string& path);
std::string render_code_text(const MixedMatrix& m);
std::string render_word(const MixedShape& shape, const MixedWord& w);
/// Parses one row `x .. | y ..`; throws ParseError with the given line number.
MixedWord parse_row(const MixedShape& shape, std::string_view row, int line);

}  // namespace chainlcd
