#ifndef REVIVAL_STORAGE_HPP
#define REVIVAL_STORAGE_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "full_index.hpp"
#include "wavelet_tree.hpp"

namespace revival {

// Index file layout, all multi-byte fields little endian:
//
//   offset  size          field
//   0       4             magic "RWTI"
//   4       1             format version, currently 1
//   5       1             kind: 0 = wavelet tree, 1 = pattern-factored index
//   6       1             tree width N (composite width for kind 1)
//   7       8             length n
//   15      N*ceil(n/64)*8  level bitvectors, level 0 first, 64-bit words,
//                           least significant bit first within each word
//
// kind 1 appends a pattern section:
//
//   0       4             magic "PTN1"
//   4       1             original symbol width W
//   5       2             group count G
//   7       25*G          per group: base (8), fixed_mask (8), fixed_bits (8),
//                         residual_width (1)
//
// Rank directories and node boundaries are rebuilt on load, never stored.

enum class storage_error_kind { io, truncated, bad_magic, bad_version, invariant };

class storage_error : public std::runtime_error {
public:
    storage_error(storage_error_kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    storage_error_kind kind() const noexcept { return kind_; }

private:
    storage_error_kind kind_;
};

using any_index = std::variant<wavelet_tree, full_index>;

namespace detail {

constexpr char index_magic[4] = {'R', 'W', 'T', 'I'};
constexpr char pattern_magic[4] = {'P', 'T', 'N', '1'};
constexpr std::uint8_t format_version = 1;

class byte_writer {
public:
    explicit byte_writer(std::ostream& os) : os_(os) {}

    void u8(std::uint8_t v) { put(reinterpret_cast<const char*>(&v), 1); }

    void u16(std::uint16_t v) {
        const char bytes[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
        put(bytes, 2);
    }

    void u64(std::uint64_t v) {
        char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = char((v >> (8 * i)) & 0xff);
        put(bytes, 8);
    }

    void raw(const char* data, std::size_t size) { put(data, size); }

    std::size_t written() const noexcept { return written_; }

private:
    void put(const char* data, std::size_t size) {
        os_.write(data, std::streamsize(size));
        if (!os_) throw storage_error(storage_error_kind::io, "write_index: sink write failed");
        written_ += size;
    }

    std::ostream& os_;
    std::size_t written_ = 0;
};

class byte_reader {
public:
    explicit byte_reader(std::istream& is) : is_(is) {}

    std::uint8_t u8() {
        char b;
        get(&b, 1);
        return std::uint8_t(b);
    }

    std::uint16_t u16() {
        char b[2];
        get(b, 2);
        return std::uint16_t(std::uint8_t(b[0])) | std::uint16_t(std::uint8_t(b[1])) << 8;
    }

    std::uint64_t u64() {
        char b[8];
        get(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(b[i])) << (8 * i);
        return v;
    }

    void magic(const char expected[4], const std::string& label) {
        char b[4];
        get(b, 4);
        if (b[0] != expected[0] || b[1] != expected[1] || b[2] != expected[2] ||
            b[3] != expected[3])
            throw storage_error(storage_error_kind::bad_magic,
                                "read_index: bad " + label + " magic");
    }

private:
    void get(char* out, std::size_t size) {
        is_.read(out, std::streamsize(size));
        if (is_.gcount() != std::streamsize(size))
            throw storage_error(storage_error_kind::truncated, "read_index: truncated stream");
    }

    std::istream& is_;
};

inline void write_levels(byte_writer& w, const wavelet_tree& wt) {
    for (unsigned l = 0; l < wt.width(); ++l)
        for (std::uint64_t word : wt.level(l).words()) w.u64(word);
}

inline wavelet_tree read_levels(byte_reader& r, unsigned width, std::uint64_t length) {
    std::vector<bit_vector> levels;
    levels.reserve(width);
    const std::size_t nwords = bit_vector::word_count(std::size_t(length));
    for (unsigned l = 0; l < width; ++l) {
        std::vector<std::uint64_t> words;
        words.reserve(std::min<std::size_t>(nwords, 1u << 20));
        for (std::size_t i = 0; i < nwords; ++i) words.push_back(r.u64());
        if (length % 64 != 0 && !words.empty() &&
            (words.back() >> (length % 64)) != 0)
            throw storage_error(storage_error_kind::invariant,
                                "read_index: nonzero bits past the payload in level " +
                                    std::to_string(l));
        levels.emplace_back(std::move(words), std::size_t(length));
    }
    return wavelet_tree::from_levels(std::move(levels), width);
}

inline void write_pattern_section(byte_writer& w, const pattern_table& table) {
    w.raw(pattern_magic, 4);
    w.u8(std::uint8_t(table.width));
    w.u16(std::uint16_t(table.groups.size()));
    for (const auto& g : table.groups) {
        w.u64(g.base);
        w.u64(g.fixed_mask);
        w.u64(g.fixed_bits);
        w.u8(std::uint8_t(g.residual_width));
    }
}

inline pattern_table read_pattern_section(byte_reader& r) {
    r.magic(pattern_magic, "pattern section");
    pattern_table table;
    table.width = r.u8();
    const std::uint16_t count = r.u16();
    table.groups.reserve(count);
    for (std::uint16_t g = 0; g < count; ++g) {
        pattern_group grp;
        grp.base = r.u64();
        grp.fixed_mask = r.u64();
        grp.fixed_bits = r.u64();
        grp.residual_width = r.u8();
        table.groups.push_back(grp);
    }
    return table;
}

}  // namespace detail

inline std::size_t write_index(const wavelet_tree& wt, std::ostream& sink) {
    detail::byte_writer w(sink);
    w.raw(detail::index_magic, 4);
    w.u8(detail::format_version);
    w.u8(0);
    w.u8(std::uint8_t(wt.width()));
    w.u64(wt.size());
    detail::write_levels(w, wt);
    return w.written();
}

inline std::size_t write_index(const full_index& idx, std::ostream& sink) {
    detail::byte_writer w(sink);
    w.raw(detail::index_magic, 4);
    w.u8(detail::format_version);
    w.u8(1);
    w.u8(std::uint8_t(idx.composite().width()));
    w.u64(idx.size());
    detail::write_levels(w, idx.composite());
    detail::write_pattern_section(w, idx.table());
    return w.written();
}

inline std::size_t write_index(const any_index& idx, std::ostream& sink) {
    return std::visit([&](const auto& v) { return write_index(v, sink); }, idx);
}

inline any_index read_index(std::istream& source) {
    detail::byte_reader r(source);
    r.magic(detail::index_magic, "index");
    const std::uint8_t version = r.u8();
    if (version != detail::format_version)
        throw storage_error(storage_error_kind::bad_version,
                            "read_index: unsupported format version " + std::to_string(version));
    const std::uint8_t kind = r.u8();
    if (kind > 1)
        throw storage_error(storage_error_kind::invariant,
                            "read_index: unknown index kind " + std::to_string(kind));
    const std::uint8_t width = r.u8();
    const std::uint64_t length = r.u64();
    try {
        wavelet_tree tree = detail::read_levels(r, width, length);
        if (kind == 0) return tree;
        pattern_table table = detail::read_pattern_section(r);
        return full_index(std::move(table), std::move(tree));
    } catch (const std::invalid_argument& e) {
        // Structural invariants re-checked by the constructors.
        throw storage_error(storage_error_kind::invariant, std::string("read_index: ") + e.what());
    }
}

}  // namespace revival

#endif  // REVIVAL_STORAGE_HPP
