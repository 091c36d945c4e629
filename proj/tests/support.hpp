#pragma once

#include <string>
#include <vector>

#include "chainlcd/space.hpp"

namespace testing {

using namespace chainlcd;

inline MixedMatrix code_text(const std::string& ring, int s, int a, int b, const std::vector<std::string>& rows) {
    std::string t = "ring " + ring + "\ns " + std::to_string(s) + "\nblocks " + std::to_string(a) + " " +
                    std::to_string(b) + "\n";
    for (const auto& r : rows) t += r + "\n";
    return parse_code_text(t);
}

inline MixedCode code_of(const MixedMatrix& m) { return span_closure(m.shape, m.rows); }

inline MixedCode code(const std::string& ring, int s, int a, int b, const std::vector<std::string>& rows) {
    return code_of(code_text(ring, s, a, b, rows));
}

/// Every shape with both blocks non-empty and |M| <= limit, over every supported ring and s.
inline std::vector<MixedShape> mixed_shapes(std::uint64_t limit) {
    std::vector<MixedShape> out;
    for (const auto& name : Ring::supported()) {
        const Ring& r = Ring::get(name);
        for (int s = 1; s < r.e(); ++s)
            for (int a = 1; a <= 8; ++a)
                for (int b = 1; b <= 8; ++b) {
                    const MixedShape sh = make_shape(name, s, a, b);
                    if (sh.module_size() <= limit) out.push_back(sh);
                }
    }
    return out;
}

/// Valid h values: 0..w-1.
inline std::vector<int> all_h(const MixedShape& sh) {
    std::vector<int> hs;
    for (int h = 0; h < sh.ring->w(); ++h) hs.push_back(h);
    return hs;
}

inline std::vector<MixedWord> all_words(const MixedShape& sh) {
    Space sp(sh);
    std::vector<MixedWord> out;
    for (std::uint64_t i = 0; i < sp.size(); ++i) out.push_back(sp.word(static_cast<std::uint32_t>(i)));
    return out;
}

}  // namespace testing
