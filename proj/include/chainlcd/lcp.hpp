#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainlcd/matrix.hpp"
#include "chainlcd/space.hpp"

namespace chainlcd {

enum class LcpCriterion { direct, gram, residue };

struct LcpVerdict {
    bool is_lcp = false;
    LcpCriterion criterion = LcpCriterion::direct;
    std::optional<MixedWord> witness;   ///< nonzero word of C ∩ D (direct)
    std::vector<int> gram_valuations;   ///< invariant factors of G diamond Hhat^T per valuation (gram)
    std::optional<bool> residue_x, residue_y;
    std::string reason;
};

/// Generator of C^{perp_0} in block form: unit-pivot rows, then rows with first block in gamma^{e-s}R.
MixedMatrix parity_check(const MixedCode& c);

/// Throws std::invalid_argument on a shape mismatch.
LcpVerdict is_lcp(const MixedCode& c, const MixedCode& d, LcpCriterion criterion);

/// Field codes (rows of g1, g2) with complementary dimensions and g1 K(g2)^T invertible.
bool field_lcp(const FieldMatrix& g1, const FieldMatrix& g2);
/// Both codes separable (C = C^(X) (+) C^(Y)); verdict from the two residue field pairs.
/// Throws std::invalid_argument("not separable") otherwise.
bool separable_lcp_check(const MixedCode& c, const MixedCode& d);
bool is_separable(const MixedCode& c);

struct MaskingScheme {
    MixedShape shape;
    MixedCode C, D;
    MixedMatrix G, H;        ///< generator matrices in block form
    MixedMatrix Ghat, Hhat;  ///< parity-check matrices of C and D
    RingMatrix P1, P2;
    int k0 = 0, l0 = 0;      ///< type of C; D has type {a-k0; b-l0}
};

/// From codes; generators are their standard forms. Throws std::invalid_argument("not an LCP").
MaskingScheme build_scheme(const MixedCode& c, const MixedCode& d);
/// From supplied generator matrices (k0 free rows first, then l0 rows with first block in gamma^{e-s}R).
MaskingScheme build_scheme(const MixedMatrix& g, const MixedMatrix& h);

/// z = x G + y H with x in R^{k0} (+) Rcheck^{l0} and y in R^{a-k0} (+) Rcheck^{b-l0}.
MixedWord dsm_encode(const MaskingScheme& s, const MixedWord& x, const MixedWord& y);

struct Decomposition {
    MixedWord x, y;
};
/// x = Omega1(Psi1(z)), y = Omega2(Psi2(z)).
Decomposition dsm_recover(const MaskingScheme& s, const MixedWord& z);
/// (z diamond Hhat^T) P1, before stripping gamma^{e-s}.
MixedWord psi1(const MaskingScheme& s, const MixedWord& z);

MixedWord masked_key_add(const MaskingScheme& s, const MixedWord& z, const MixedWord& f);
/// x -> (x1 L1 | x2 L2); L1 is k0 x k0 over R, L2 is l0 x l0 with entries read mod gamma^s.
MixedWord masked_linear(const MaskingScheme& s, const MixedWord& z, const RingMatrix& l1, const RingMatrix& l2);
/// Coordinate-wise lookup tables: s1 over R (size |R|), s2 over Rcheck (size |Rcheck|).
MixedWord masked_nonlinear(const MaskingScheme& s, const MixedWord& z, const std::vector<elem>& s1,
                           const std::vector<elem>& s2);
/// Cubing on R, identity on Rcheck.
std::pair<std::vector<elem>, std::vector<elem>> demo_sboxes(const MixedShape& shape);

enum class FiaOutcome { detected, undetected_benign, undetected_corrupting };
std::string to_string(FiaOutcome o);
FiaOutcome fia_detect(const MaskingScheme& s, const MixedWord& z, const MixedWord& eps);

struct ScaReport {
    bool safe = false;   ///< |T1| < d(D^(X)perp) and |T2| < d(D^(Y)perp)
    bool spans = false;  ///< restricted mask matrix spans R^{|T1|} (+) Rcheck^{|T2|}
    std::optional<bool> uniform;  ///< exact histogram over all masks (absent when too large)
    std::uint64_t masks = 0;
    std::uint64_t min_count = 0, max_count = 0;
};

/// Throws std::out_of_range for bad indices, std::invalid_argument for repeated ones.
ScaReport sca_leakage_check(const MaskingScheme& s, const std::vector<int>& t1, const std::vector<int>& t2,
                            const MixedWord& x = {}, std::uint64_t mask_cap = std::uint64_t{1} << 22);

enum class ThresholdVariant { general, separable, embedded };

struct ThresholdReport {
    std::optional<int> d_c, d_dx_perp, d_dy_perp;  ///< absent when the code or block is empty
    std::optional<int> d_cx, d_cy;                 ///< separable variant
    std::optional<int> d_c_emb, d_d_emb_perp;      ///< embedded variant
    int threshold = 0;
};

ThresholdReport security_threshold(const MaskingScheme& s, ThresholdVariant v);

/// D^(X): span of the first block of D's free rows in R^a; D^(Y): span of the second block of its other rows.
MixedCode block_code_dx(const MaskingScheme& s);
MixedCode block_code_dy(const MaskingScheme& s);
/// [A 0; 0 D] and [E 0; 0 H] from the scheme's generator matrices.
std::pair<MixedMatrix, MixedMatrix> separable_companion(const MaskingScheme& s);

struct AdderResult {
    MixedWord c, d;
};
AdderResult adder_recover(const MaskingScheme& s, const MixedWord& z);

}  // namespace chainlcd
