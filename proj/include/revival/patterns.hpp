#ifndef REVIVAL_PATTERNS_HPP
#define REVIVAL_PATTERNS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"

namespace revival {

// One group of a pattern table: a set of bit positions on which every member
// agrees (fixed_mask/fixed_bits) plus residual_width freely varying positions.
// The member set is exactly { fixed_bits | scatter(r) : 0 <= r < 2^k }, so a
// residual alone reconstructs the member.
struct pattern_group {
    std::uint64_t base = 0;        // smallest member, always equal to fixed_bits
    std::uint64_t fixed_mask = 0;  // 1-bits mark shared positions
    std::uint64_t fixed_bits = 0;  // shared values on masked positions, zero elsewhere
    unsigned residual_width = 0;   // number of unmasked positions within the table width

    bool contains(std::uint64_t value) const noexcept {
        return (value & fixed_mask) == fixed_bits;
    }

    // Places the residual bits into the unmasked positions, most significant
    // residual bit to the most significant unmasked position.
    std::uint64_t scatter(std::uint64_t residual, unsigned width) const {
        if (residual_width < 64 && (residual >> residual_width) != 0)
            throw std::invalid_argument("pattern_group::scatter: residual " +
                                        std::to_string(residual) + " needs more than " +
                                        std::to_string(residual_width) + " bits");
        std::uint64_t out = 0;
        unsigned left = residual_width;
        for (unsigned pos = width; pos-- > 0 && left > 0;) {
            if ((fixed_mask >> pos) & 1u) continue;
            --left;
            if ((residual >> left) & 1u) out |= std::uint64_t{1} << pos;
        }
        return out;
    }

    // Inverse of scatter: compacts the unmasked positions of a member value.
    std::uint64_t compact(std::uint64_t value, unsigned width) const noexcept {
        std::uint64_t residual = 0;
        for (unsigned pos = width; pos-- > 0;) {
            if ((fixed_mask >> pos) & 1u) continue;
            residual = (residual << 1) | ((value >> pos) & 1u);
        }
        return residual;
    }

    std::uint64_t member(std::uint64_t residual, unsigned width) const {
        return fixed_bits | scatter(residual, width);
    }

    bool operator==(const pattern_group&) const noexcept = default;
};

// Ordered list of disjoint groups covering a declared alphabet of width-bit
// values. Composite codes place the group id above residual_max() residual
// bits.
struct pattern_table {
    unsigned width = 0;  // original symbol width W
    std::vector<pattern_group> groups;

    unsigned group_bits() const noexcept {
        return groups.size() <= 1 ? 0
                                  : unsigned(std::bit_width(std::uint64_t(groups.size() - 1)));
    }

    unsigned residual_max() const noexcept {
        unsigned k = 0;
        for (const auto& g : groups) k = std::max(k, g.residual_width);
        return k;
    }

    // Width of the composite wavelet tree; a degenerate single-value alphabet
    // yields zero code bits, padded to one level of zeros.
    unsigned composite_width() const noexcept {
        return std::max(1u, group_bits() + residual_max());
    }

    // Index of the group containing value, or groups.size() if none does.
    std::size_t group_of(std::uint64_t value) const noexcept {
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (groups[g].contains(value)) return g;
        return groups.size();
    }

    // Composite code of (group index, residual) and its inverse. A lone
    // full-width group makes residual_max() 64, so the group bits vanish.
    std::uint64_t compose(std::uint64_t group, std::uint64_t residual) const noexcept {
        const unsigned k = residual_max();
        return k >= 64 ? residual : (group << k) | residual;
    }

    std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t code) const noexcept {
        const unsigned k = residual_max();
        return k >= 64 ? std::pair{std::uint64_t{0}, code}
                       : std::pair{code >> k, code & detail::width_mask(k)};
    }

    bool operator==(const pattern_table&) const noexcept = default;
};

// Structural validation shared by construction and deserialization. Two
// groups are disjoint iff their fixed bits differ somewhere on the commonly
// masked positions.
inline void validate_table(const pattern_table& table) {
    if (table.width < 1 || table.width > 64)
        throw std::invalid_argument("pattern_table: width " + std::to_string(table.width) +
                                    " outside [1, 64]");
    if (table.groups.empty()) throw std::invalid_argument("pattern_table: no groups");
    const std::uint64_t wmask = detail::width_mask(table.width);
    for (std::size_t g = 0; g < table.groups.size(); ++g) {
        const pattern_group& grp = table.groups[g];
        const std::string where = "pattern_table: group " + std::to_string(g);
        if ((grp.fixed_mask & ~wmask) != 0 || (grp.fixed_bits & ~wmask) != 0 ||
            (grp.base & ~wmask) != 0)
            throw std::invalid_argument(where + " exceeds the table width");
        if ((grp.fixed_bits & ~grp.fixed_mask) != 0)
            throw std::invalid_argument(where + " has fixed bits outside its mask");
        if (grp.residual_width != unsigned(std::popcount(~grp.fixed_mask & wmask)))
            throw std::invalid_argument(where + " residual width does not match its mask");
        if (grp.base != grp.fixed_bits)
            throw std::invalid_argument(where + " base is not its smallest member");
        if (g > 0 && table.groups[g - 1].base >= grp.base)
            throw std::invalid_argument(where + " not sorted by base");
        for (std::size_t h = 0; h < g; ++h) {
            const pattern_group& other = table.groups[h];
            if (((grp.fixed_bits ^ other.fixed_bits) & grp.fixed_mask & other.fixed_mask) == 0)
                throw std::invalid_argument(where + " overlaps group " + std::to_string(h));
        }
    }
}

// Greedy left-to-right cover of the alphabet by maximal aligned dyadic
// blocks: from the smallest uncovered value b, take the largest k with
// b % 2^k == 0 and {b, ..., b + 2^k - 1} fully present.
inline std::vector<pattern_group> dyadic_decompose(std::span<const std::uint64_t> alphabet,
                                                   unsigned width) {
    if (width < 1 || width > 64)
        throw std::invalid_argument("dyadic_decompose: width " + std::to_string(width) +
                                    " outside [1, 64]");
    std::vector<std::uint64_t> values(alphabet.begin(), alphabet.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) throw std::invalid_argument("dyadic_decompose: empty alphabet");
    if ((values.back() & ~detail::width_mask(width)) != 0)
        throw std::invalid_argument("dyadic_decompose: value " + std::to_string(values.back()) +
                                    " does not fit in " + std::to_string(width) + " bits");

    std::vector<pattern_group> groups;
    const std::uint64_t wmask = detail::width_mask(width);
    std::size_t i = 0;
    while (i < values.size()) {
        const std::uint64_t b = values[i];
        const unsigned align = b == 0 ? width : std::min<unsigned>(width, std::countr_zero(b));
        unsigned k = 0;
        for (unsigned cand = align; cand > 0; --cand) {
            if (cand >= 64) continue;
            const std::uint64_t block = std::uint64_t{1} << cand;
            // Sorted unique values: the block is fully present iff it fits in
            // the remaining suffix and ends exactly 2^k - 1 above b.
            if (block <= values.size() - i && values[i + block - 1] == b + block - 1) {
                k = cand;
                break;
            }
        }
        const std::uint64_t low = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
        groups.push_back({.base = b,
                          .fixed_mask = wmask & ~low,
                          .fixed_bits = b,
                          .residual_width = k});
        i += std::size_t{1} << k;
    }
    return groups;
}

// Single-group table when every member agrees on some bit positions and the
// varying positions are exercised completely; the dyadic cover otherwise.
inline pattern_table extract_patterns(std::span<const std::uint64_t> alphabet, unsigned width) {
    if (width < 1 || width > 64)
        throw std::invalid_argument("extract_patterns: width " + std::to_string(width) +
                                    " outside [1, 64]");
    std::vector<std::uint64_t> values(alphabet.begin(), alphabet.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) throw std::invalid_argument("extract_patterns: empty alphabet");
    if ((values.back() & ~detail::width_mask(width)) != 0)
        throw std::invalid_argument("extract_patterns: value " + std::to_string(values.back()) +
                                    " does not fit in " + std::to_string(width) + " bits");

    std::uint64_t all_and = ~std::uint64_t{0}, all_or = 0;
    for (std::uint64_t v : values) {
        all_and &= v;
        all_or |= v;
    }
    const std::uint64_t varying = all_and ^ all_or;
    const unsigned k = unsigned(std::popcount(varying));
    // Distinct members map to distinct residuals, so 2^k members means the
    // residual projection covers [0, 2^k) exactly.
    pattern_table table{.width = width, .groups = {}};
    if (k < 64 && values.size() == (std::uint64_t{1} << k)) {
        table.groups.push_back({.base = values.front(),
                                .fixed_mask = detail::width_mask(width) & ~varying,
                                .fixed_bits = values.front() & ~varying,
                                .residual_width = k});
    } else {
        table.groups = dyadic_decompose(values, width);
    }
    validate_table(table);
    return table;
}

inline std::string binary_string(std::uint64_t value, unsigned width) {
    std::string s(width, '0');
    for (unsigned pos = 0; pos < width; ++pos)
        if ((value >> pos) & 1u) s[width - 1 - pos] = '1';
    return s;
}

// Printable form, one group per line:
//   base=0x44 mask=1111100 fixed=1000100 k=2
inline std::string to_string(const pattern_table& table) {
    std::ostringstream os;
    for (const auto& g : table.groups) {
        os << "base=0x" << std::hex << g.base << std::dec
           << " mask=" << binary_string(g.fixed_mask, table.width)
           << " fixed=" << binary_string(g.fixed_bits, table.width)
           << " k=" << g.residual_width << '\n';
    }
    return os.str();
}

}  // namespace revival

#endif  // REVIVAL_PATTERNS_HPP
