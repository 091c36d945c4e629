#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chainlcd/matrix.hpp"
#include "chainlcd/space.hpp"

namespace chainlcd {

struct LcdVerdict {
    bool is_lcd = false;
    /// Nonzero element of C ∩ C^{perp_h} (brute force, when not LCD).
    std::optional<MixedWord> witness;
    /// |C ∩ C^{perp_h}| (brute force only).
    std::uint64_t intersection_size = 0;
    bool weakly_free = true;
    /// Gram criterion: number of invariant factors of G diamond sigma^h(G)^T per valuation 0..e.
    std::vector<int> gram_valuations;
    /// Residue criterion: invertibility of the two residue Gram matrices.
    std::optional<bool> residue_x, residue_y;
    std::string reason;
};

LcdVerdict is_lcd_bruteforce(const MixedCode& c, int h);
LcdVerdict is_lcd_gram(const MixedCode& c, int h);
LcdVerdict is_lcd_residue(const MixedCode& c, int h);

/// G sigma^h(G)^T invertible. Throws std::invalid_argument("not a generator matrix") on dependent rows.
bool field_lcd(const FieldMatrix& g, int h);

/// A sigma^h(C)^T + iota(B sigma^h(D)^T) for G = [I A 0 B; 0 gamma^{e-s}C I D].
/// Throws std::invalid_argument if G does not have that layout.
RingMatrix bajalan_matrix(const MixedMatrix& g, int h);
/// All entries of bajalan_matrix(g, h) lie in gamma R.
bool bajalan_constraint(const MixedMatrix& g, int h);

/// Code generated by [I gamma*A 0 B; 0 gamma^{e-s}C I gamma*D]; LCD for every h.
/// A: k0 x (a-k0), B: k0 x (b-l0), C: l0 x (a-k0), D: l0 x (b-l0), all as ring codes.
MixedCode construct_lcd(const MixedShape& shape, int k0, int l0, const RingMatrix& a, const RingMatrix& b,
                        const RingMatrix& c, const RingMatrix& d);

struct RepairResult {
    bool success = false;
    MixedCode code;
    std::vector<elem> scale_a, scale_b;  ///< unit scalings applied to each coordinate
    std::uint64_t tried = 0;
    std::string reason;
};

/// Searches unit column scalings (Teichmueller lifts of residues, lexicographic, identity first)
/// for one making the residue criterion hold. With euclidean_only the search uses h = 0.
RepairResult lcd_repair_monomial(const MixedCode& c, int h, bool euclidean_only = false);

}  // namespace chainlcd
