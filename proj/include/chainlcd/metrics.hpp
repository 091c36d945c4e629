#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainlcd/space.hpp"

namespace chainlcd {

/// Gray map on Z4: 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10. Throws std::invalid_argument for other rings.
std::pair<int, int> gray_phi(const Ring& ring, elem x);
/// phi on the first block, identity on the second (Z4 (+) Z2 only).
std::vector<int> gray_map(const MixedShape& shape, const MixedWord& m);

/// Lee weight over Z4, Z9, F4u2; Hamming weight over Z2, Z3, F4.
/// Throws std::invalid_argument for other alphabets (use hamming weight there).
int lee_weight(std::string_view alphabet, elem x);
bool lee_supported(std::string_view alphabet);

int hamming_weight(const MixedWord& m);
/// Lee on the first block plus Hamming on the second.
int word_lee_weight(const MixedShape& shape, const MixedWord& m);

struct WeightProfile {
    std::optional<int> min_lee;      ///< absent for the zero code or unsupported alphabets
    std::optional<int> min_hamming;  ///< absent for the zero code
    std::vector<std::uint64_t> hamming_enumerator;  ///< index = weight, over all codewords
    std::map<int, std::uint64_t> lee_distribution;
};

WeightProfile code_distances(const MixedCode& c);
/// Minimum Hamming weight over nonzero codewords, 0 for the zero code.
int hamming_distance(const MixedCode& c);

/// `value,weight` rows for the alphabet.
std::string weight_table_csv(std::string_view alphabet);

}  // namespace chainlcd
