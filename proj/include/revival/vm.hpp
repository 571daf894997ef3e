#ifndef REVIVAL_VM_HPP
#define REVIVAL_VM_HPP

#include <array>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "compute.hpp"
#include "wavelet_tree.hpp"

namespace revival {

// Straight-line register machine over one wavelet tree used as compressed
// memory. Two address modes touch the store: GATHER resolves a position to
// its value by reading one bit per level, RANK/SELECT resolve a value to
// counts and positions. Programs are plain text, one instruction per line,
// lines starting with '#' are comments:
//
//   LOADI  rd imm      rd <- imm
//   GATHER rd ri       rd <- value at position reg ri        (index mode)
//   RANK   rd rs ri    rd <- count of symbol rs in [0, ri)   (value mode)
//   SELECT rd rs rk    rd <- position of occurrence rk of rs (value mode)
//   SUM    rd          rd <- sum of the stored sequence
//   LEN    rd          rd <- stored sequence length
//   ADD/SUB/MUL rd rs rt   wrapping 64-bit arithmetic
//   PRINT  rd          append reg rd to the output
//   HALT               stop

enum class opcode : std::uint8_t {
    loadi,
    gather,
    rank,
    select,
    sum,
    len,
    add,
    sub,
    mul,
    print,
    halt,
};

struct instruction {
    opcode op;
    std::uint8_t rd = 0;
    std::uint8_t rs = 0;
    std::uint8_t rt = 0;
    std::uint64_t imm = 0;

    bool operator==(const instruction&) const = default;
};

struct vm_program {
    std::vector<instruction> instructions;

    bool operator==(const vm_program&) const = default;
};

struct parse_error : std::runtime_error {
    parse_error(std::size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    std::size_t line;
};

struct vm_trap : std::runtime_error {
    vm_trap(std::size_t at, const std::string& what)
        : std::runtime_error("trap at pc=" + std::to_string(at) + ": " + what), pc(at) {}
    std::size_t pc;
};

struct vm_timeout : std::runtime_error {
    explicit vm_timeout(std::uint64_t limit)
        : std::runtime_error("step limit " + std::to_string(limit) + " exceeded") {}
};

struct vm_state {
    std::array<std::uint64_t, 8> regs{};
    std::vector<std::uint64_t> output;
    std::size_t pc = 0;
    std::uint64_t cost = 0;  // level-bitvector bits read by gathers
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

inline std::uint8_t parse_register(std::string_view tok, std::size_t line_no) {
    if (tok.size() == 2 && tok[0] == 'r' && tok[1] >= '0' && tok[1] <= '7')
        return std::uint8_t(tok[1] - '0');
    throw parse_error(line_no, "bad register '" + std::string(tok) + "', expected r0-r7");
}

inline std::uint64_t parse_immediate(std::string_view tok, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw parse_error(line_no, "bad immediate '" + std::string(tok) + "'");
    return value;
}

}  // namespace detail

inline vm_program vm_parse(std::string_view text) {
    vm_program program;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        const auto tokens = detail::split_tokens(line);
        if (tokens.empty() || tokens[0].front() == '#') continue;

        const std::string_view op = tokens[0];
        const auto expect = [&](std::size_t count) {
            if (tokens.size() != count + 1)
                throw parse_error(line_no, std::string(op) + " takes " + std::to_string(count) +
                                               " operand(s), got " +
                                               std::to_string(tokens.size() - 1));
        };
        instruction ins{};
        if (op == "LOADI") {
            expect(2);
            ins.op = opcode::loadi;
            ins.rd = detail::parse_register(tokens[1], line_no);
            ins.imm = detail::parse_immediate(tokens[2], line_no);
        } else if (op == "GATHER") {
            expect(2);
            ins.op = opcode::gather;
            ins.rd = detail::parse_register(tokens[1], line_no);
            ins.rs = detail::parse_register(tokens[2], line_no);
        } else if (op == "RANK" || op == "SELECT") {
            expect(3);
            ins.op = op == "RANK" ? opcode::rank : opcode::select;
            ins.rd = detail::parse_register(tokens[1], line_no);
            ins.rs = detail::parse_register(tokens[2], line_no);
            ins.rt = detail::parse_register(tokens[3], line_no);
        } else if (op == "SUM" || op == "LEN" || op == "PRINT") {
            expect(1);
            ins.op = op == "SUM" ? opcode::sum : op == "LEN" ? opcode::len : opcode::print;
            ins.rd = detail::parse_register(tokens[1], line_no);
        } else if (op == "ADD" || op == "SUB" || op == "MUL") {
            expect(3);
            ins.op = op == "ADD" ? opcode::add : op == "SUB" ? opcode::sub : opcode::mul;
            ins.rd = detail::parse_register(tokens[1], line_no);
            ins.rs = detail::parse_register(tokens[2], line_no);
            ins.rt = detail::parse_register(tokens[3], line_no);
        } else if (op == "HALT") {
            expect(0);
            ins.op = opcode::halt;
        } else {
            throw parse_error(line_no, "unknown mnemonic '" + std::string(op) + "'");
        }
        program.instructions.push_back(ins);
    }
    return program;
}

inline vm_state vm_run(const vm_program& program, const wavelet_tree& store,
                       std::uint64_t step_limit = 1u << 20) {
    if (step_limit == 0) throw std::invalid_argument("vm_run: step limit must be positive");
    vm_state st;
    std::uint64_t steps = 0;
    while (st.pc < program.instructions.size()) {
        if (steps++ >= step_limit) throw vm_timeout(step_limit);
        const instruction& ins = program.instructions[st.pc];
        try {
            switch (ins.op) {
                case opcode::loadi:
                    st.regs[ins.rd] = ins.imm;
                    break;
                case opcode::gather:
                    st.regs[ins.rd] = store.access(st.regs[ins.rs]);
                    st.cost += store.width();
                    break;
                case opcode::rank:
                    st.regs[ins.rd] = store.rank(st.regs[ins.rs], st.regs[ins.rt]);
                    break;
                case opcode::select:
                    st.regs[ins.rd] = store.select(st.regs[ins.rs], st.regs[ins.rt]);
                    break;
                case opcode::sum:
                    st.regs[ins.rd] = sum_direct(store);
                    break;
                case opcode::len:
                    st.regs[ins.rd] = store.size();
                    break;
                case opcode::add:
                    st.regs[ins.rd] = st.regs[ins.rs] + st.regs[ins.rt];
                    break;
                case opcode::sub:
                    st.regs[ins.rd] = st.regs[ins.rs] - st.regs[ins.rt];
                    break;
                case opcode::mul:
                    st.regs[ins.rd] = st.regs[ins.rs] * st.regs[ins.rt];
                    break;
                case opcode::print:
                    st.output.push_back(st.regs[ins.rd]);
                    break;
                case opcode::halt:
                    ++st.pc;
                    return st;
            }
        } catch (const std::out_of_range& e) {
            throw vm_trap(st.pc, e.what());
        } catch (const std::invalid_argument& e) {
            throw vm_trap(st.pc, e.what());
        } catch (const std::overflow_error& e) {
            throw vm_trap(st.pc, e.what());
        }
        ++st.pc;
    }
    return st;
}

}  // namespace revival

#endif  // REVIVAL_VM_HPP
