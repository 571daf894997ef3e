#ifndef REVIVAL_COMPUTE_HPP
#define REVIVAL_COMPUTE_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "bits.hpp"
#include "wavelet_tree.hpp"

namespace revival {

// Sum of the stored sequence, evaluated as a weighted popcount of the level
// bitvectors: level l carries bit weight 2^(width-1-l), so its 1-count
// contributes that weight once per element. No value is ever materialized.
inline std::uint64_t sum_direct(const wavelet_tree& wt) {
    unsigned __int128 acc = 0;
    for (unsigned l = 0; l < wt.width(); ++l)
        acc += static_cast<unsigned __int128>(wt.level(l).ones()) << (wt.width() - 1 - l);
    if (acc > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("sum_direct: sum exceeds 64 bits");
    return static_cast<std::uint64_t>(acc);
}

inline std::size_t count_eq(const wavelet_tree& wt, std::uint64_t symbol) {
    return wt.rank(symbol, wt.size());
}

namespace detail {

inline std::size_t range_count_node(const wavelet_tree& wt, unsigned level, std::size_t node_lo,
                                    std::size_t node_hi, std::size_t a, std::size_t b,
                                    std::uint64_t prefix, std::uint64_t lo_sym,
                                    std::uint64_t hi_sym) {
    if (a >= b) return 0;
    // Dyadic value range covered by this node.
    const unsigned rest = wt.width() - level;
    const std::uint64_t cover_lo = rest >= 64 ? 0 : prefix << rest;
    const std::uint64_t cover_hi = cover_lo | width_mask(rest);
    if (cover_hi < lo_sym || cover_lo > hi_sym) return 0;
    if (lo_sym <= cover_lo && cover_hi <= hi_sym) return b - a;
    const bit_vector& bv = wt.level(level);
    const std::size_t node_zeros = bv.rank0(node_hi) - bv.rank0(node_lo);
    const std::size_t za = bv.rank0(a) - bv.rank0(node_lo);
    const std::size_t zb = bv.rank0(b) - bv.rank0(node_lo);
    std::size_t total = range_count_node(wt, level + 1, node_lo, node_lo + node_zeros,
                                         node_lo + za, node_lo + zb, prefix << 1, lo_sym, hi_sym);
    total += range_count_node(wt, level + 1, node_lo + node_zeros, node_hi,
                              node_lo + node_zeros + (a - node_lo - za),
                              node_lo + node_zeros + (b - node_lo - zb), (prefix << 1) | 1,
                              lo_sym, hi_sym);
    return total;
}

}  // namespace detail

// Number of positions i in [l, r) with lo_sym <= value <= hi_sym, by
// simultaneous rank descent over the value range.
inline std::size_t range_count(const wavelet_tree& wt, std::size_t l, std::size_t r,
                               std::uint64_t lo_sym, std::uint64_t hi_sym) {
    if (l > r || r > wt.size())
        throw std::out_of_range("range_count: positions [" + std::to_string(l) + ", " +
                                std::to_string(r) + ") outside [0, " + std::to_string(wt.size()) +
                                ")");
    if (lo_sym > hi_sym)
        throw std::invalid_argument("range_count: symbol range [" + std::to_string(lo_sym) +
                                    ", " + std::to_string(hi_sym) + "] is empty");
    if (!wavelet_tree::fits(hi_sym, wt.width()))
        throw std::invalid_argument("range_count: symbol " + std::to_string(hi_sym) +
                                    " does not fit in " + std::to_string(wt.width()) + " bits");
    return detail::range_count_node(wt, 0, 0, wt.size(), l, r, 0, lo_sym, hi_sym);
}

}  // namespace revival

#endif  // REVIVAL_COMPUTE_HPP
