#ifndef REVIVAL_WAVELET_TREE_HPP
#define REVIVAL_WAVELET_TREE_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bit_vector.hpp"

namespace revival {

struct space_stats {
    std::uint64_t payload_bits = 0;   // width * length
    std::uint64_t overhead_bits = 0;  // rank directories (node boundaries are derived, not stored)
    std::uint64_t raw_bits = 0;       // storage for the same sequence at the reference width
    double ratio = 0.0;               // (payload + overhead) / raw
};

// Wavelet tree over the integer alphabet [0, 2^width). The alphabet is split
// at the midpoint of each node's dyadic value range, smaller half to the
// 0-child, so level l stores bit (width-1-l) of every symbol and elements at
// level l are grouped contiguously (and stably) by their top l bits.
//
// A consequence of this split rule is that the root-to-leaf bit path of any
// position spells the value stored there, most significant bit first; reading
// the path leaf-to-root yields the bit-reversed expansion. All navigation is
// pointerless: node boundaries are recovered from rank queries on the level
// bitvectors during descent instead of being stored.
class wavelet_tree {
public:
    static constexpr unsigned max_width = 64;

    wavelet_tree() : width_(1), levels_(1) {}

    wavelet_tree(std::span<const std::uint64_t> seq, unsigned width)
        : width_(checked_width(width)), size_(seq.size()) {
        for (std::size_t i = 0; i < seq.size(); ++i)
            if (!fits(seq[i], width_))
                throw std::invalid_argument("wavelet_tree: symbol " + std::to_string(seq[i]) +
                                            " at position " + std::to_string(i) +
                                            " does not fit in " + std::to_string(width_) + " bits");
        std::vector<std::uint64_t> cur(seq.begin(), seq.end());
        std::vector<std::uint64_t> next;
        next.reserve(cur.size());
        levels_.reserve(width_);
        for (unsigned l = 0; l < width_; ++l) {
            const unsigned shift = width_ - 1 - l;
            std::vector<std::uint64_t> words(bit_vector::word_count(size_), 0);
            for (std::size_t i = 0; i < cur.size(); ++i)
                if ((cur[i] >> shift) & 1u) words[i / 64] |= std::uint64_t{1} << (i % 64);
            levels_.emplace_back(std::move(words), size_);
            if (l + 1 == width_) break;
            // Stable-partition each node run (equal top l bits) by this
            // level's bit, yielding the top-(l+1)-bit grouping below.
            const auto same_node = [shift](std::uint64_t a, std::uint64_t b) {
                return shift + 1 >= 64 || (a >> (shift + 1)) == (b >> (shift + 1));
            };
            next.clear();
            std::size_t i = 0;
            while (i < cur.size()) {
                std::size_t j = i;
                while (j < cur.size() && same_node(cur[j], cur[i])) ++j;
                for (std::size_t k = i; k < j; ++k)
                    if (((cur[k] >> shift) & 1u) == 0) next.push_back(cur[k]);
                for (std::size_t k = i; k < j; ++k)
                    if (((cur[k] >> shift) & 1u) == 1) next.push_back(cur[k]);
                i = j;
            }
            cur.swap(next);
        }
    }

    // Reassembles a tree from raw level bitvectors (deserialization path).
    static wavelet_tree from_levels(std::vector<bit_vector> levels, unsigned width) {
        checked_width(width);
        if (levels.size() != width)
            throw std::invalid_argument("wavelet_tree: expected " + std::to_string(width) +
                                        " levels, got " + std::to_string(levels.size()));
        const std::size_t n = levels.front().size();
        for (const auto& lv : levels)
            if (lv.size() != n)
                throw std::invalid_argument("wavelet_tree: level lengths disagree");
        wavelet_tree wt;
        wt.width_ = width;
        wt.size_ = n;
        wt.levels_ = std::move(levels);
        return wt;
    }

    unsigned width() const noexcept { return width_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    const bit_vector& level(unsigned l) const { return levels_.at(l); }

    // Value at position i; equals the root-to-leaf bit path folded MSB first.
    std::uint64_t access(std::size_t i) const {
        check_position(i);
        std::size_t lo = 0, hi = size_, p = i;
        std::uint64_t value = 0;
        for (unsigned l = 0; l < width_; ++l) {
            const bit_vector& bv = levels_[l];
            const std::size_t node_zeros = bv.rank0(hi) - bv.rank0(lo);
            const bool bit = bv.get(p);
            if (bit) {
                p = lo + node_zeros + (bv.rank1(p) - bv.rank1(lo));
                lo += node_zeros;
            } else {
                p = lo + (bv.rank0(p) - bv.rank0(lo));
                hi = lo + node_zeros;
            }
            value = (value << 1) | std::uint64_t(bit);
        }
        return value;
    }

    // Bits read along the root-to-leaf route of position i. Pass
    // leaf_to_root = true for the reversed reading order.
    std::vector<std::uint8_t> gather_path(std::size_t i, bool leaf_to_root = false) const {
        const std::uint64_t v = access(i);
        std::vector<std::uint8_t> path(width_);
        for (unsigned l = 0; l < width_; ++l)
            path[l] = std::uint8_t((v >> (width_ - 1 - l)) & 1u);
        if (leaf_to_root) {
            for (unsigned l = 0; l * 2 + 1 < width_; ++l) std::swap(path[l], path[width_ - 1 - l]);
        }
        return path;
    }

    // Occurrences of symbol in positions [0, pos).
    std::size_t rank(std::uint64_t symbol, std::size_t pos) const {
        check_symbol(symbol);
        if (pos > size_)
            throw std::out_of_range("wavelet_tree::rank: position " + std::to_string(pos) +
                                    " past length " + std::to_string(size_));
        std::size_t lo = 0, hi = size_, p = pos;
        for (unsigned l = 0; l < width_; ++l) {
            const bit_vector& bv = levels_[l];
            const std::size_t node_zeros = bv.rank0(hi) - bv.rank0(lo);
            if ((symbol >> (width_ - 1 - l)) & 1u) {
                p = lo + node_zeros + (bv.rank1(p) - bv.rank1(lo));
                lo += node_zeros;
            } else {
                p = lo + (bv.rank0(p) - bv.rank0(lo));
                hi = lo + node_zeros;
            }
        }
        return p - lo;
    }

    // Position of the (k+1)-th occurrence of symbol, zero-based k. Descends
    // once to collect the node run at every level, then reascends by select.
    std::size_t select(std::uint64_t symbol, std::size_t k) const {
        check_symbol(symbol);
        std::array<std::pair<std::size_t, std::size_t>, max_width + 1> run;
        run[0] = {0, size_};
        for (unsigned l = 0; l < width_; ++l) {
            const bit_vector& bv = levels_[l];
            const auto [lo, hi] = run[l];
            const std::size_t node_zeros = bv.rank0(hi) - bv.rank0(lo);
            run[l + 1] = ((symbol >> (width_ - 1 - l)) & 1u)
                             ? std::pair{lo + node_zeros, hi}
                             : std::pair{lo, lo + node_zeros};
        }
        const auto [leaf_lo, leaf_hi] = run[width_];
        if (k >= leaf_hi - leaf_lo)
            throw std::out_of_range("wavelet_tree::select: occurrence " + std::to_string(k) +
                                    " beyond count " + std::to_string(leaf_hi - leaf_lo) +
                                    " of symbol " + std::to_string(symbol));
        std::size_t off = k;
        for (unsigned l = width_; l-- > 0;) {
            const bit_vector& bv = levels_[l];
            const std::size_t lo = run[l].first;
            if ((symbol >> (width_ - 1 - l)) & 1u)
                off = bv.select1(bv.rank1(lo) + off) - lo;
            else
                off = bv.select0(bv.rank0(lo) + off) - lo;
        }
        return off;
    }

    // Start offsets of the node runs at one level, plus the length sentinel:
    // 2^l + 1 nondecreasing values partitioning [0, size]. Derived from rank
    // queries on demand; only enumerable levels are accepted.
    std::vector<std::size_t> node_starts(unsigned l) const {
        if (l > width_)
            throw std::out_of_range("wavelet_tree::node_starts: level " + std::to_string(l) +
                                    " past depth " + std::to_string(width_));
        if (l > 26)
            throw std::invalid_argument("wavelet_tree::node_starts: level too deep to enumerate");
        std::vector<std::size_t> starts{0, size_};
        for (unsigned j = 0; j < l; ++j) {
            const bit_vector& bv = levels_[j];
            std::vector<std::size_t> next;
            next.reserve(starts.size() * 2 - 1);
            for (std::size_t v = 0; v + 1 < starts.size(); ++v) {
                const std::size_t lo = starts[v], hi = starts[v + 1];
                next.push_back(lo);
                next.push_back(lo + (bv.rank0(hi) - bv.rank0(lo)));
            }
            next.push_back(size_);
            starts = std::move(next);
        }
        return starts;
    }

    // raw_width: symbol width of the uncompressed representation being
    // compared against; defaults to this tree's own width.
    space_stats stats(unsigned raw_width = 0) const {
        if (raw_width == 0) raw_width = width_;
        space_stats s;
        s.payload_bits = std::uint64_t(width_) * size_;
        for (const auto& lv : levels_) s.overhead_bits += lv.directory_bits();
        s.raw_bits = std::uint64_t(raw_width) * size_;
        s.ratio = s.raw_bits == 0 ? 0.0
                                  : double(s.payload_bits + s.overhead_bits) / double(s.raw_bits);
        return s;
    }

    bool operator==(const wavelet_tree& other) const noexcept {
        return width_ == other.width_ && size_ == other.size_ && levels_ == other.levels_;
    }

    static bool fits(std::uint64_t value, unsigned width) noexcept {
        return width >= 64 || (value >> width) == 0;
    }

private:
    static unsigned checked_width(unsigned width) {
        if (width < 1 || width > max_width)
            throw std::invalid_argument("wavelet_tree: width " + std::to_string(width) +
                                        " outside [1, 64]");
        return width;
    }

    void check_position(std::size_t i) const {
        if (i >= size_)
            throw std::out_of_range("wavelet_tree: position " + std::to_string(i) +
                                    " past length " + std::to_string(size_));
    }

    void check_symbol(std::uint64_t symbol) const {
        if (!fits(symbol, width_))
            throw std::invalid_argument("wavelet_tree: symbol " + std::to_string(symbol) +
                                        " does not fit in " + std::to_string(width_) + " bits");
    }

    unsigned width_;
    std::size_t size_ = 0;
    std::vector<bit_vector> levels_;
};

}  // namespace revival

#endif  // REVIVAL_WAVELET_TREE_HPP
