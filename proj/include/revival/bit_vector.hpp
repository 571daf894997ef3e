#ifndef REVIVAL_BIT_VECTOR_HPP
#define REVIVAL_BIT_VECTOR_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revival {

// Packed bitvector with a cumulative rank directory: one 64-bit 1-count per
// 512-bit superblock, plus a trailing sentinel entry holding the total.
// Bit p lives in word p/64 at intra-word offset p%64, least significant bit
// first. Immutable after construction; concurrent reads are safe.
class bit_vector {
public:
    static constexpr std::size_t bits_per_word = 64;
    static constexpr std::size_t words_per_superblock = 8;
    static constexpr std::size_t bits_per_superblock = 512;

    bit_vector() : rank_dir_{0} {}

    // Takes ownership of packed words. Bits at positions >= nbits are cleared
    // so that serialization and equality stay deterministic.
    bit_vector(std::vector<std::uint64_t> words, std::size_t nbits)
        : words_(std::move(words)), size_(nbits) {
        const std::size_t need = word_count(nbits);
        if (words_.size() != need)
            throw std::invalid_argument("bit_vector: got " + std::to_string(words_.size()) +
                                        " words, need " + std::to_string(need) + " for " +
                                        std::to_string(nbits) + " bits");
        clear_tail();
        build_directory();
    }

    template <std::ranges::input_range R>
        requires std::convertible_to<std::ranges::range_value_t<R>, bool>
    explicit bit_vector(R&& bits) {
        for (auto&& b : bits) {
            if (size_ % bits_per_word == 0) words_.push_back(0);
            if (static_cast<bool>(b)) words_.back() |= std::uint64_t{1} << (size_ % bits_per_word);
            ++size_;
        }
        build_directory();
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    // Total number of set / unset bits.
    std::size_t ones() const noexcept { return rank_dir_.back(); }
    std::size_t zeros() const noexcept { return size_ - ones(); }

    bool get(std::size_t pos) const {
        if (pos >= size_)
            throw std::out_of_range("bit_vector::get: position " + std::to_string(pos) +
                                    " past length " + std::to_string(size_));
        return (words_[pos / bits_per_word] >> (pos % bits_per_word)) & 1u;
    }

    // Number of 1-bits in [0, pos). pos may equal size().
    std::size_t rank1(std::size_t pos) const {
        if (pos > size_)
            throw std::out_of_range("bit_vector::rank1: position " + std::to_string(pos) +
                                    " past length " + std::to_string(size_));
        const std::size_t sb = pos / bits_per_superblock;
        std::size_t r = rank_dir_[sb];
        std::size_t w = sb * words_per_superblock;
        const std::size_t wend = pos / bits_per_word;
        for (; w < wend; ++w) r += std::size_t(std::popcount(words_[w]));
        const std::size_t off = pos % bits_per_word;
        if (off != 0) r += std::size_t(std::popcount(words_[wend] & low_mask(off)));
        return r;
    }

    std::size_t rank0(std::size_t pos) const { return pos - rank1(pos); }

    // Position of the (k+1)-th 1-bit, zero-based k.
    std::size_t select1(std::size_t k) const {
        if (k >= ones())
            throw std::out_of_range("bit_vector::select1: occurrence " + std::to_string(k) +
                                    " beyond 1-count " + std::to_string(ones()));
        // Binary search the directory, then scan at most one superblock.
        std::size_t lo = 0, hi = rank_dir_.size() - 1;
        while (lo + 1 < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (rank_dir_[mid] <= k) lo = mid; else hi = mid;
        }
        std::size_t c = k - rank_dir_[lo];
        std::size_t w = lo * words_per_superblock;
        while (std::size_t(std::popcount(words_[w])) <= c) {
            c -= std::size_t(std::popcount(words_[w]));
            ++w;
        }
        return w * bits_per_word + select_in_word(words_[w], c);
    }

    // Position of the (k+1)-th 0-bit, zero-based k.
    std::size_t select0(std::size_t k) const {
        if (k >= zeros())
            throw std::out_of_range("bit_vector::select0: occurrence " + std::to_string(k) +
                                    " beyond 0-count " + std::to_string(zeros()));
        std::size_t lo = 0, hi = rank_dir_.size() - 1;
        while (lo + 1 < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (zeros_before(mid) <= k) lo = mid; else hi = mid;
        }
        std::size_t c = k - zeros_before(lo);
        std::size_t w = lo * words_per_superblock;
        while (std::size_t(std::popcount(~words_[w])) <= c) {
            c -= std::size_t(std::popcount(~words_[w]));
            ++w;
        }
        // Tail bits of the final word are stored as zero; mask them off so the
        // complement does not expose positions past size().
        std::uint64_t inv = ~words_[w];
        if ((w + 1) * bits_per_word > size_) inv &= low_mask(size_ - w * bits_per_word);
        return w * bits_per_word + select_in_word(inv, c);
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    // Space consumed by the rank directory, in bits.
    std::size_t directory_bits() const noexcept { return rank_dir_.size() * 64; }

    bool operator==(const bit_vector& other) const noexcept {
        return size_ == other.size_ && words_ == other.words_;
    }

    static std::size_t word_count(std::size_t nbits) noexcept {
        return (nbits + bits_per_word - 1) / bits_per_word;
    }

private:
    static constexpr std::uint64_t low_mask(std::size_t n) noexcept {
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

    // Index of the (c+1)-th set bit of w, c < popcount(w).
    static std::size_t select_in_word(std::uint64_t w, std::size_t c) noexcept {
        std::size_t pos = 0;
        for (std::size_t half = 32; half > 0; half >>= 1) {
            const std::size_t cnt = std::size_t(std::popcount(w & low_mask(half)));
            if (c >= cnt) {
                c -= cnt;
                w >>= half;
                pos += half;
            }
        }
        return pos;
    }

    // Zeros in [0, 512*sb), clamped to the payload.
    std::size_t zeros_before(std::size_t sb) const noexcept {
        const std::size_t prefix = std::min(sb * bits_per_superblock, size_);
        return prefix - rank_dir_[sb];
    }

    void clear_tail() noexcept {
        if (size_ % bits_per_word != 0) words_.back() &= low_mask(size_ % bits_per_word);
    }

    void build_directory() {
        const std::size_t superblocks = (size_ + bits_per_superblock - 1) / bits_per_superblock;
        rank_dir_.assign(superblocks + 1, 0);
        std::size_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (w % words_per_superblock == 0) rank_dir_[w / words_per_superblock] = acc;
            acc += std::size_t(std::popcount(words_[w]));
        }
        rank_dir_[superblocks] = acc;
    }

    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> rank_dir_;  // rank_dir_[j] = ones in [0, 512*j); last entry = total
    std::size_t size_ = 0;
};

}  // namespace revival

#endif  // REVIVAL_BIT_VECTOR_HPP
