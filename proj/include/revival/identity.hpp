#ifndef REVIVAL_IDENTITY_HPP
#define REVIVAL_IDENTITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavelet_tree.hpp"

namespace revival {

struct equal_report {
    bool holds = true;
    std::optional<std::size_t> first_violation;
};

// MSB-first bit path of a value; the reverse reading is its LSB-first
// expansion.
inline std::vector<std::uint8_t> value_to_path(std::uint64_t value, unsigned width) {
    if (width < 1 || width > 64)
        throw std::invalid_argument("value_to_path: width " + std::to_string(width) +
                                    " outside [1, 64]");
    if (!wavelet_tree::fits(value, width))
        throw std::invalid_argument("value_to_path: value " + std::to_string(value) +
                                    " does not fit in " + std::to_string(width) + " bits");
    std::vector<std::uint8_t> path(width);
    for (unsigned l = 0; l < width; ++l) path[l] = std::uint8_t((value >> (width - 1 - l)) & 1u);
    return path;
}

inline std::uint64_t path_to_value(std::span<const std::uint8_t> path) {
    if (path.empty() || path.size() > 64)
        throw std::invalid_argument("path_to_value: path length " + std::to_string(path.size()) +
                                    " outside [1, 64]");
    std::uint64_t value = 0;
    for (std::uint8_t b : path) {
        if (b > 1) throw std::invalid_argument("path_to_value: path entries must be 0 or 1");
        value = (value << 1) | b;
    }
    return value;
}

// Checks that every position's root-to-leaf path spells the original value's
// binary expansion. access() folds the gathered path MSB first and path
// lengths are fixed at the tree width, so comparing folded values compares
// the paths themselves.
inline equal_report verify_equal(const wavelet_tree& wt, std::span<const std::uint64_t> original) {
    if (wt.size() != original.size())
        throw std::invalid_argument("verify_equal: index length " + std::to_string(wt.size()) +
                                    " vs sequence length " + std::to_string(original.size()));
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (!wavelet_tree::fits(original[i], wt.width()))
            throw std::invalid_argument("verify_equal: symbol " + std::to_string(original[i]) +
                                        " at position " + std::to_string(i) +
                                        " does not fit in " + std::to_string(wt.width()) + " bits");
        if (wt.access(i) != original[i]) return {false, i};
    }
    return {true, std::nullopt};
}

}  // namespace revival

#endif  // REVIVAL_IDENTITY_HPP
