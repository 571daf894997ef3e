#ifndef REVIVAL_FULL_INDEX_HPP
#define REVIVAL_FULL_INDEX_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "patterns.hpp"
#include "wavelet_tree.hpp"

namespace revival {

// A composite code carried a residual wider than its group permits; the
// index bits no longer describe a member of the declared alphabet.
struct corruption_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pattern-factored index: symbols are split into (group id, residual) and the
// composite codes g * 2^residual_max + r are stored in one wavelet tree. The
// fixed bits of each group live only in the table, so a symbol costs
// composite_width() bits instead of the original width.
class full_index {
public:
    full_index() : table_{.width = 1, .groups = {{0, 1, 0, 0}}} {}

    full_index(pattern_table table, wavelet_tree composite)
        : table_(std::move(table)), composite_(std::move(composite)) {
        validate_table(table_);
        if (composite_.width() != table_.composite_width())
            throw std::invalid_argument("full_index: composite width " +
                                        std::to_string(composite_.width()) +
                                        " does not match the table's " +
                                        std::to_string(table_.composite_width()));
    }

    static full_index encode(std::span<const std::uint64_t> seq, pattern_table table) {
        validate_table(table);
        std::vector<std::uint64_t> codes;
        codes.reserve(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const std::size_t g = table.group_of(seq[i]);
            if (g == table.groups.size())
                throw std::invalid_argument("full_index: symbol " + std::to_string(seq[i]) +
                                            " at position " + std::to_string(i) +
                                            " is outside every group");
            codes.push_back(table.compose(g, table.groups[g].compact(seq[i], table.width)));
        }
        wavelet_tree composite(codes, table.composite_width());
        return full_index(std::move(table), std::move(composite));
    }

    const pattern_table& table() const noexcept { return table_; }
    const wavelet_tree& composite() const noexcept { return composite_; }
    std::size_t size() const noexcept { return composite_.size(); }
    bool empty() const noexcept { return composite_.empty(); }
    unsigned original_width() const noexcept { return table_.width; }

    std::uint64_t access(std::size_t i) const { return decode_code(composite_.access(i)); }

    std::vector<std::uint64_t> decode() const {
        std::vector<std::uint64_t> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) out.push_back(access(i));
        return out;
    }

    // Composite code of a symbol; throws if the symbol is outside the
    // declared alphabet. rank/select on the original sequence reduce to
    // rank/select of this code in the composite tree.
    std::uint64_t code_of(std::uint64_t symbol) const {
        const std::size_t g = table_.group_of(symbol);
        if (g == table_.groups.size())
            throw std::invalid_argument("full_index: symbol " + std::to_string(symbol) +
                                        " is outside every group");
        return table_.compose(g, table_.groups[g].compact(symbol, table_.width));
    }

    bool covers(std::uint64_t symbol) const noexcept {
        return table_.group_of(symbol) != table_.groups.size();
    }

    std::size_t rank(std::uint64_t symbol, std::size_t pos) const {
        if (pos > size())
            throw std::out_of_range("full_index::rank: position " + std::to_string(pos) +
                                    " past length " + std::to_string(size()));
        check_symbol(symbol);
        if (!covers(symbol)) return 0;
        return composite_.rank(code_of(symbol), pos);
    }

    std::size_t select(std::uint64_t symbol, std::size_t k) const {
        check_symbol(symbol);
        if (!covers(symbol))
            throw std::out_of_range("full_index::select: symbol " + std::to_string(symbol) +
                                    " never occurs");
        return composite_.select(code_of(symbol), k);
    }

    bool operator==(const full_index& other) const noexcept {
        return table_ == other.table_ && composite_ == other.composite_;
    }

private:
    void check_symbol(std::uint64_t symbol) const {
        if (!wavelet_tree::fits(symbol, table_.width))
            throw std::invalid_argument("full_index: symbol " + std::to_string(symbol) +
                                        " does not fit in " + std::to_string(table_.width) +
                                        " bits");
    }

    std::uint64_t decode_code(std::uint64_t code) const {
        const auto [g, r] = table_.split(code);
        if (g >= table_.groups.size())
            throw corruption_error("full_index: composite code names group " + std::to_string(g) +
                                   " of " + std::to_string(table_.groups.size()));
        const pattern_group& grp = table_.groups[std::size_t(g)];
        if (grp.residual_width < 64 && (r >> grp.residual_width) != 0)
            throw corruption_error("full_index: residual " + std::to_string(r) +
                                   " exceeds group " + std::to_string(g) + " width " +
                                   std::to_string(grp.residual_width));
        return grp.member(r, table_.width);
    }

    pattern_table table_;
    wavelet_tree composite_;
};

}  // namespace revival

#endif  // REVIVAL_FULL_INDEX_HPP
