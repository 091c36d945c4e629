#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chainlcd/space.hpp"

namespace chainlcd {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------- counting formulas

/// Gaussian binomial [n r]_q; 0 when r < 0 or r > n.
BigInt gaussian_binomial(int n, int r, const BigInt& q);
/// L_q(n, r): Euclidean LCD [n, r] codes over F_q.
BigInt count_field_euclidean(int n, int r, int q);
/// M_{q1^2}(n, r): Hermitian LCD [n, r] codes over F_{q1^2}.
BigInt count_field_hermitian(int n, int r, int q1);

enum class Variant { euclidean, hermitian };
std::string to_string(Variant v);
/// Throws std::invalid_argument for anything but `euclidean` / `hermitian`.
Variant parse_variant(const std::string& s);
/// h of the variant: 0, or w/2 (throws std::invalid_argument for odd w).
int variant_h(const MixedShape& shape, Variant v);

/// LCD codes of type {k0, 0..; l0, 0..}.
BigInt count_mixed_type(const MixedShape& shape, int k0, int l0, Variant v);
/// All LCD codes of the shape, including the zero code.
BigInt count_mixed_total(const MixedShape& shape, Variant v);

/// Brute-force censuses over F_q (q prime or 4) used as independent oracles.
std::uint64_t census_field_euclidean(int n, int r, int q);
std::uint64_t census_field_hermitian(int n, int r, int q1);

// ---------------------------------------------------------------- enumeration

struct BudgetExceeded : std::runtime_error {
    std::uint64_t estimate;
    BudgetExceeded(std::uint64_t estimate_, std::uint64_t budget);
};

constexpr std::uint64_t kDefaultBudget = 8192;

/// Streams every submodule of M exactly once. Recursion over the first coordinate:
/// C <-> (C0 <= M', t, v) with C = C0 + R(gamma^t, v) and gamma^{e_A - t} v in C0.
/// Throws BudgetExceeded if |M| > budget.
void enumerate_submodules(const MixedShape& shape, const std::function<void(const MixedCode&)>& sink,
                          std::uint64_t budget = kDefaultBudget);
std::vector<MixedCode> enumerate_submodules(const MixedShape& shape, std::uint64_t budget = kDefaultBudget);
/// The same census by a closure walk over the submodule lattice (each code extended by one element).
std::vector<MixedCode> enumerate_submodules_bfs(const MixedShape& shape, std::uint64_t budget = kDefaultBudget);

/// LCD codes under <,>_h, in a fixed order independent of `jobs`.
std::vector<MixedCode> enumerate_lcd(const MixedShape& shape, int h, std::uint64_t budget = kDefaultBudget,
                                     int jobs = 1);

// ---------------------------------------------------------------- classification

/// a! b! |U(R)|^a |U(Rcheck)|^b.
BigInt monomial_group_order(const MixedShape& shape);
/// Generators of the monomial group: a transposition and an n-cycle per block and unit-group
/// generators acting on the first coordinate of each block.
std::vector<MonomialMap> monomial_generators(const MixedShape& shape);
/// The fingerprint-minimal code in the orbit of c.
MixedCode canonical_form(const MixedCode& c);
/// Orbit of c under the monomial group.
std::vector<MixedCode> monomial_orbit(const MixedCode& c);
bool monomially_equivalent(const MixedCode& x, const MixedCode& y);

struct ClassInfo {
    MixedCode representative;  ///< fingerprint-minimal member
    std::uint64_t orbit_size = 0;
    MixedMatrix generator;
    std::optional<int> lee_distance, hamming_distance;
    std::map<int, std::uint64_t> orbit_lee;  ///< Lee distance -> members
    CodeType type;
};

struct ClassificationResult {
    std::vector<ClassInfo> classes;         ///< sorted by representative fingerprint
    std::vector<std::size_t> class_of;      ///< input index -> class index
    std::uint64_t closure_violations = 0;   ///< images that left the input set
};

/// Partitions a set of codes (one shape) into monomial orbits.
ClassificationResult classify_monomial(const std::vector<MixedCode>& codes);

// ---------------------------------------------------------------- reference tables and reports

struct TableValue {
    std::uint64_t nonzero;
    std::uint64_t classes;
};

/// Published non-zero LCD counts and class counts for Z4Z2 / Z9Z3 (Euclidean) and F4u2 (Hermitian).
std::optional<TableValue> reference_table(const MixedShape& shape, Variant v);

struct CountRow {
    int k0 = 0, l0 = 0;
    BigInt formula;
    std::optional<std::uint64_t> bruteforce;
};

struct CountReport {
    MixedShape shape;
    Variant variant = Variant::euclidean;
    std::vector<CountRow> rows;
    BigInt formula_nonzero;
    std::optional<std::uint64_t> bruteforce_nonzero, bruteforce_classes;
    std::optional<TableValue> table;
    std::vector<std::string> mismatches;
};

/// Formula rows always; brute force (and classes when `classify`) when |M| fits the budget.
CountReport count_report(const MixedShape& shape, Variant v, bool bruteforce, bool classify,
                         std::uint64_t budget = kDefaultBudget, int jobs = 1);

// ---------------------------------------------------------------- appendix verification

struct AppendixEntry {
    int line = 0;  ///< line of the `lee` header
    std::optional<int> claimed_lee;
    MixedMatrix matrix;
    std::string parse_error;
};

struct AppendixFile {
    MixedShape shape;
    int h = 0;
    std::optional<int> claimed_classes;
    std::vector<AppendixEntry> entries;
    std::vector<std::string> errors;  ///< file-level problems
};

/// Reads the appendix list format; entry-level problems are recorded, never thrown.
AppendixFile parse_appendix_text(std::string_view text);
AppendixFile parse_appendix_file(const std::string& path);

struct EntryVerdict {
    int line = 0;
    std::string parse_error;
    bool lcd = false;
    std::optional<int> lee;  ///< computed
    bool lee_ok = false;
    bool inequivalent = false;
    std::optional<int> equivalent_to;  ///< earlier entry index in the same orbit
    std::optional<bool> complete;      ///< set when completeness is checked
};

struct AppendixReport {
    MixedShape shape;
    int h = 0;
    std::vector<EntryVerdict> entries;
    bool completeness_checked = false;
    std::uint64_t census_classes = 0;  ///< LCD classes in the census when checked
    std::uint64_t missing_classes = 0;
    std::vector<std::string> errors;
    bool all_pass() const;
};

/// Checks each entry for LCD-ness, Lee distance and pairwise inequivalence; completeness
/// against the census when `check_completeness` and |M| fits the budget.
AppendixReport verify_appendix(const AppendixFile& file, bool check_completeness,
                               std::uint64_t budget = kDefaultBudget, int jobs = 1);

}  // namespace chainlcd
