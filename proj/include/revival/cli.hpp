#ifndef REVIVAL_CLI_HPP
#define REVIVAL_CLI_HPP

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "compute.hpp"
#include "full_index.hpp"
#include "identity.hpp"
#include "patterns.hpp"
#include "storage.hpp"
#include "vm.hpp"
#include "wavelet_tree.hpp"

namespace revival::cli {

namespace detail {

inline std::vector<std::uint64_t> read_symbols(const std::string& path, const std::string& mode) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file '" + path + "'");
    std::vector<std::uint64_t> symbols;
    if (mode == "bytes") {
        char byte;
        while (is.get(byte)) symbols.push_back(std::uint8_t(byte));
    } else {
        std::string token;
        std::size_t index = 0;
        while (is >> token) {
            std::uint64_t value = 0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size())
                throw std::runtime_error("token " + std::to_string(index) + " ('" + token +
                                         "') is not an unsigned integer");
            symbols.push_back(value);
            ++index;
        }
    }
    return symbols;
}

inline unsigned resolve_width(const std::vector<std::uint64_t>& symbols, const std::string& mode,
                              unsigned requested) {
    if (requested != 0) return requested;
    if (mode == "bytes") return 8;
    // Smallest width holding every value, at least one level.
    std::uint64_t max_value = 0;
    for (std::uint64_t v : symbols) max_value = std::max(max_value, v);
    return std::max(1u, unsigned(std::bit_width(max_value)));
}

inline std::vector<std::uint64_t> distinct_symbols(std::vector<std::uint64_t> symbols) {
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    return symbols;
}

inline any_index load_index(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open index file '" + path + "'");
    return read_index(is);
}

inline void save_index(const any_index& idx, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    write_index(idx, os);
    os.flush();
    if (!os) throw storage_error(storage_error_kind::io, "write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open program file '" + path + "'");
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return buffer.str();
}

struct stats_line {
    std::uint64_t payload_bits;
    std::uint64_t overhead_bits;
    std::uint64_t raw_bits;
    double ratio;
};

inline stats_line index_stats(const any_index& idx) {
    if (const auto* wt = std::get_if<wavelet_tree>(&idx)) {
        const space_stats s = wt->stats();
        return {s.payload_bits, s.overhead_bits, s.raw_bits, s.ratio};
    }
    const auto& fi = std::get<full_index>(idx);
    space_stats s = fi.composite().stats(fi.original_width());
    // The pattern section is structure the plain tree does not carry.
    s.overhead_bits += 8 * (7 + 25 * std::uint64_t(fi.table().groups.size()));
    s.ratio = s.raw_bits == 0 ? 0.0
                              : double(s.payload_bits + s.overhead_bits) / double(s.raw_bits);
    return {s.payload_bits, s.overhead_bits, s.raw_bits, s.ratio};
}

}  // namespace detail

// Runs one command against the given streams and returns the process exit
// code: 0 success, 1 domain or I/O failure, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"wavelet-tree index tool: the stored bit paths double as the values"};
    app.name("rwt");
    app.require_subcommand(1);

    std::string input_path, index_path, out_path, against_path, program_path;
    std::string mode = "bytes";
    unsigned width = 0;
    bool full = false;
    std::uint64_t arg_i = 0, arg_s = 0, arg_pos = 0, arg_k = 0;
    std::uint64_t arg_l = 0, arg_r = 0, arg_lo = 0, arg_hi = 0;

    const auto add_mode = [&](CLI::App* cmd) {
        cmd->add_option("--mode", mode, "input interpretation: bytes | u64text")
            ->check(CLI::IsMember({"bytes", "u64text"}));
    };
    const auto add_width = [&](CLI::App* cmd) {
        cmd->add_option("--width", width, "symbol width in bits (default: 8 for bytes, inferred for u64text)")
            ->check(CLI::Range(1u, 64u));
    };

    CLI::App* build = app.add_subcommand("build", "build an index file from raw input");
    build->add_option("--input", input_path, "input file")->required();
    add_mode(build);
    add_width(build);
    build->add_flag("--full", full, "factor shared bit patterns out into a pattern table");
    build->add_option("--out", out_path, "index file to write")->required();

    CLI::App* access = app.add_subcommand("access", "value stored at a position");
    access->add_option("index", index_path)->required();
    access->add_option("position", arg_i)->required();

    CLI::App* rank = app.add_subcommand("rank", "occurrences of a symbol before a position");
    rank->add_option("index", index_path)->required();
    rank->add_option("symbol", arg_s)->required();
    rank->add_option("position", arg_pos)->required();

    CLI::App* select = app.add_subcommand("select", "position of the k-th occurrence of a symbol");
    select->add_option("index", index_path)->required();
    select->add_option("symbol", arg_s)->required();
    select->add_option("occurrence", arg_k)->required();

    CLI::App* sum = app.add_subcommand("sum", "sum of all stored values");
    sum->add_option("index", index_path)->required();

    CLI::App* count = app.add_subcommand("count", "total occurrences of a symbol");
    count->add_option("index", index_path)->required();
    count->add_option("symbol", arg_s)->required();

    CLI::App* rangecount =
        app.add_subcommand("rangecount", "positions in [L, R) holding values in [LO, HI]");
    rangecount->add_option("index", index_path)->required();
    rangecount->add_option("L", arg_l)->required();
    rangecount->add_option("R", arg_r)->required();
    rangecount->add_option("LO", arg_lo)->required();
    rangecount->add_option("HI", arg_hi)->required();

    CLI::App* verify = app.add_subcommand("verify", "check an index against the original input");
    verify->add_option("index", index_path)->required();
    verify->add_option("--against", against_path, "original input file")->required();
    add_mode(verify);

    CLI::App* patterns = app.add_subcommand("patterns", "print the pattern table of an input");
    patterns->add_option("--input", input_path, "input file")->required();
    add_mode(patterns);
    add_width(patterns);

    CLI::App* stats = app.add_subcommand("stats", "payload, overhead and raw sizes of an index");
    stats->add_option("index", index_path)->required();

    CLI::App* vm = app.add_subcommand("vm", "run a program against a plain index");
    vm->add_option("index", index_path)->required();
    vm->add_option("program", program_path)->required();

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("rwt");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return 2;
    }

    try {
        if (build->parsed()) {
            const auto symbols = detail::read_symbols(input_path, mode);
            const unsigned w = detail::resolve_width(symbols, mode, width);
            if (full) {
                const auto alphabet = detail::distinct_symbols(symbols);
                if (alphabet.empty())
                    throw std::runtime_error("cannot infer an alphabet from empty input");
                detail::save_index(full_index::encode(symbols, extract_patterns(alphabet, w)),
                                   out_path);
            } else {
                detail::save_index(wavelet_tree(symbols, w), out_path);
            }
            return 0;
        }
        if (access->parsed()) {
            const any_index idx = detail::load_index(index_path);
            out << std::visit([&](const auto& v) { return v.access(arg_i); }, idx) << '\n';
            return 0;
        }
        if (rank->parsed()) {
            const any_index idx = detail::load_index(index_path);
            out << std::visit([&](const auto& v) { return v.rank(arg_s, arg_pos); }, idx) << '\n';
            return 0;
        }
        if (select->parsed()) {
            const any_index idx = detail::load_index(index_path);
            out << std::visit([&](const auto& v) { return v.select(arg_s, arg_k); }, idx) << '\n';
            return 0;
        }
        if (sum->parsed()) {
            const any_index idx = detail::load_index(index_path);
            if (const auto* wt = std::get_if<wavelet_tree>(&idx)) {
                out << sum_direct(*wt) << '\n';
            } else {
                const auto& fi = std::get<full_index>(idx);
                unsigned __int128 total = 0;
                for (std::size_t i = 0; i < fi.size(); ++i) total += fi.access(i);
                if (total > std::numeric_limits<std::uint64_t>::max())
                    throw std::overflow_error("sum exceeds 64 bits");
                out << std::uint64_t(total) << '\n';
            }
            return 0;
        }
        if (count->parsed()) {
            const any_index idx = detail::load_index(index_path);
            out << std::visit([&](const auto& v) { return v.rank(arg_s, v.size()); }, idx) << '\n';
            return 0;
        }
        if (rangecount->parsed()) {
            const any_index idx = detail::load_index(index_path);
            if (const auto* wt = std::get_if<wavelet_tree>(&idx)) {
                out << range_count(*wt, arg_l, arg_r, arg_lo, arg_hi) << '\n';
            } else {
                const auto& fi = std::get<full_index>(idx);
                if (arg_l > arg_r || arg_r > fi.size())
                    throw std::out_of_range("positions [" + std::to_string(arg_l) + ", " +
                                            std::to_string(arg_r) + ") outside [0, " +
                                            std::to_string(fi.size()) + ")");
                if (arg_lo > arg_hi)
                    throw std::invalid_argument("symbol range [" + std::to_string(arg_lo) + ", " +
                                                std::to_string(arg_hi) + "] is empty");
                if (!wavelet_tree::fits(arg_hi, fi.original_width()))
                    throw std::invalid_argument("symbol " + std::to_string(arg_hi) +
                                                " does not fit in " +
                                                std::to_string(fi.original_width()) + " bits");
                std::size_t hits = 0;
                for (std::uint64_t i = arg_l; i < arg_r; ++i) {
                    const std::uint64_t v = fi.access(i);
                    if (arg_lo <= v && v <= arg_hi) ++hits;
                }
                out << hits << '\n';
            }
            return 0;
        }
        if (verify->parsed()) {
            const any_index idx = detail::load_index(index_path);
            const auto original = detail::read_symbols(against_path, mode);
            if (const auto* wt = std::get_if<wavelet_tree>(&idx)) {
                const equal_report report = verify_equal(*wt, original);
                if (report.holds) {
                    out << "OK\n";
                    return 0;
                }
                out << "violation at " << *report.first_violation << '\n';
                return 1;
            }
            const auto& fi = std::get<full_index>(idx);
            if (fi.size() != original.size())
                throw std::invalid_argument("index length " + std::to_string(fi.size()) +
                                            " vs sequence length " +
                                            std::to_string(original.size()));
            for (std::size_t i = 0; i < original.size(); ++i) {
                if (fi.access(i) != original[i]) {
                    out << "violation at " << i << '\n';
                    return 1;
                }
            }
            out << "OK\n";
            return 0;
        }
        if (patterns->parsed()) {
            const auto symbols = detail::read_symbols(input_path, mode);
            const auto alphabet = detail::distinct_symbols(symbols);
            if (alphabet.empty())
                throw std::runtime_error("cannot infer an alphabet from empty input");
            const unsigned w = detail::resolve_width(symbols, mode, width);
            out << to_string(extract_patterns(alphabet, w));
            return 0;
        }
        if (stats->parsed()) {
            const auto s = detail::index_stats(detail::load_index(index_path));
            out << "payload_bits=" << s.payload_bits << '\n'
                << "overhead_bits=" << s.overhead_bits << '\n'
                << "raw_bits=" << s.raw_bits << '\n'
                << "ratio=" << std::fixed << std::setprecision(6) << s.ratio << '\n';
            return 0;
        }
        if (vm->parsed()) {
            const any_index idx = detail::load_index(index_path);
            const auto* wt = std::get_if<wavelet_tree>(&idx);
            if (wt == nullptr)
                throw std::runtime_error("vm requires a plain wavelet-tree index");
            const vm_state st = vm_run(vm_parse(detail::read_text_file(program_path)), *wt);
            for (std::uint64_t v : st.output) out << v << '\n';
            out << "cost=" << st.cost << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace revival::cli

#endif  // REVIVAL_CLI_HPP
