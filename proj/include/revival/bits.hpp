#ifndef REVIVAL_BITS_HPP
#define REVIVAL_BITS_HPP

#include <cstdint>

namespace revival::detail {

// Mask selecting the low `width` bits, defined for width in [0, 64].
inline constexpr std::uint64_t width_mask(unsigned width) noexcept {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace revival::detail

#endif  // REVIVAL_BITS_HPP
