#include "chainlcd/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace chainlcd {

namespace {

constexpr int kLeeZ4[] = {0, 1, 2, 1};
constexpr int kLeeZ9[] = {0, 1, 2, 3, 3, 3, 3, 2, 1};

int hamming(elem x) { return x != 0 ? 1 : 0; }

std::string first_alphabet(const MixedShape& sh) { return sh.ring->name(); }

}  // namespace

std::pair<int, int> gray_phi(const Ring& ring, elem x) {
    if (ring.name() != "Z4") throw std::invalid_argument("the Gray map is defined on Z4 only");
    static constexpr std::pair<int, int> table[] = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    return table[x & 3];
}

std::vector<int> gray_map(const MixedShape& shape, const MixedWord& m) {
    if (shape.s != 1) throw std::invalid_argument("the Gray map needs Z4 (+) Z2");
    std::vector<int> out;
    for (int i = 0; i < shape.a; ++i) {
        auto [b0, b1] = gray_phi(*shape.ring, m[i]);
        out.push_back(b0);
        out.push_back(b1);
    }
    for (int j = shape.a; j < shape.n(); ++j) out.push_back(static_cast<int>(m[j]));
    return out;
}

bool lee_supported(std::string_view alphabet) {
    return alphabet == "Z4" || alphabet == "Z9" || alphabet == "F4u2" || alphabet == "Z2" || alphabet == "Z3" ||
           alphabet == "F4";
}

int lee_weight(std::string_view alphabet, elem x) {
    if (alphabet == "Z4" && x < 4) return kLeeZ4[x];
    if (alphabet == "Z9" && x < 9) return kLeeZ9[x];
    if (alphabet == "F4u2" && x < 16) {
        const elem a0 = x % 4, a1 = x / 4;
        return hamming(a0 ^ a1) + hamming(a1);  // F4 addition is XOR on codes
    }
    if ((alphabet == "Z2" && x < 2) || (alphabet == "Z3" && x < 3) || (alphabet == "F4" && x < 4)) return hamming(x);
    if (lee_supported(alphabet)) throw std::invalid_argument("element out of range for " + std::string(alphabet));
    throw std::invalid_argument("no Lee weight for alphabet " + std::string(alphabet) + "; use the Hamming weight");
}

int hamming_weight(const MixedWord& m) {
    return static_cast<int>(std::count_if(m.begin(), m.end(), [](elem x) { return x != 0; }));
}

int word_lee_weight(const MixedShape& shape, const MixedWord& m) {
    const std::string fa = first_alphabet(shape);
    int w = 0;
    for (int i = 0; i < shape.a; ++i) w += lee_weight(fa, m[i]);
    for (int j = shape.a; j < shape.n(); ++j) w += hamming(m[j]);
    return w;
}

WeightProfile code_distances(const MixedCode& c) {
    const MixedShape& sh = c.shape;
    const bool lee = sh.a == 0 || lee_supported(first_alphabet(sh));
    Space sp(sh);
    WeightProfile p;
    p.hamming_enumerator.assign(sh.n() + 1, 0);
    MixedWord x;
    for (std::uint32_t idx : c.words) {
        sp.word(idx, x);
        const int wh = hamming_weight(x);
        ++p.hamming_enumerator[wh];
        if (idx != 0 && (!p.min_hamming || wh < *p.min_hamming)) p.min_hamming = wh;
        if (lee) {
            const int wl = word_lee_weight(sh, x);
            ++p.lee_distribution[wl];
            if (idx != 0 && (!p.min_lee || wl < *p.min_lee)) p.min_lee = wl;
        }
    }
    return p;
}

int hamming_distance(const MixedCode& c) {
    Space sp(c.shape);
    int best = 0;
    MixedWord x;
    for (std::uint32_t idx : c.words) {
        if (idx == 0) continue;
        sp.word(idx, x);
        const int w = hamming_weight(x);
        if (best == 0 || w < best) best = w;
    }
    return best;
}

std::string weight_table_csv(std::string_view alphabet) {
    static const std::map<std::string, elem, std::less<>> sizes = {{"Z4", 4}, {"Z9", 9}, {"F4u2", 16},
                                                                   {"Z2", 2}, {"Z3", 3}, {"F4", 4}};
    auto it = sizes.find(alphabet);
    if (it == sizes.end()) lee_weight(alphabet, 0);
    std::string out = "value,weight\n";
    for (elem x = 0; x < it->second; ++x) out += std::to_string(x) + "," + std::to_string(lee_weight(alphabet, x)) + "\n";
    return out;
}

}  // namespace chainlcd
