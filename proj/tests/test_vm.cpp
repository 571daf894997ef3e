#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include <revival/vm.hpp>

#include "oracle.hpp"

using revival::opcode;
using revival::parse_error;
using revival::vm_parse;
using revival::vm_program;
using revival::vm_run;
using revival::vm_timeout;
using revival::vm_trap;
using revival::wavelet_tree;

namespace {

wavelet_tree small_store() { return wavelet_tree(std::vector<std::uint64_t>{2, 0, 3, 1}, 2); }

}  // namespace

TEST_SUITE("vm") {
    TEST_CASE("parses a gather-print program") {
        const auto p = vm_parse("LOADI r0 3\nGATHER r1 r0\nPRINT r1\nHALT");
        REQUIRE(p.instructions.size() == 4);
        CHECK(p.instructions[0].op == opcode::loadi);
        CHECK(p.instructions[0].rd == 0);
        CHECK(p.instructions[0].imm == 3);
        CHECK(p.instructions[1].op == opcode::gather);
        CHECK(p.instructions[1].rs == 0);
        CHECK(p.instructions[3].op == opcode::halt);
    }

    TEST_CASE("parses sum and comments") {
        const auto p = vm_parse("# leading comment\n\nSUM r0\nPRINT r0\nHALT\n");
        CHECK(p.instructions.size() == 3);
    }

    TEST_CASE("rejects unknown mnemonics with the line number") {
        try {
            (void)vm_parse("BADOP r0");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 1);
            CHECK(std::string(e.what()).find("BADOP") != std::string::npos);
        }
    }

    TEST_CASE("rejects bad registers and immediates") {
        try {
            (void)vm_parse("LOADI r0 1\nLOADI r9 1");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 2);
        }
        CHECK_THROWS_AS((void)vm_parse("LOADI r0 abc"), parse_error);
        CHECK_THROWS_AS((void)vm_parse("LOADI r0 -1"), parse_error);
        CHECK_THROWS_AS((void)vm_parse("ADD r0 r1"), parse_error);
        CHECK_THROWS_AS((void)vm_parse("HALT r0"), parse_error);
    }

    TEST_CASE("gather reads through the index address mode") {
        const auto store = small_store();
        const auto st = vm_run(vm_parse("LOADI r0 3\nGATHER r1 r0\nPRINT r1\nHALT"), store);
        CHECK(st.output == std::vector<std::uint64_t>{1});
        CHECK(st.cost == 2);
    }

    TEST_CASE("sum prints the direct aggregate") {
        const auto st = vm_run(vm_parse("SUM r0\nPRINT r0\nHALT"), small_store());
        CHECK(st.output == std::vector<std::uint64_t>{6});
        CHECK(st.cost == 0);
    }

    TEST_CASE("rank and select resolve the value address mode") {
        const auto program = vm_parse(
            "LOADI r1 3\n"
            "LEN r2\n"
            "RANK r3 r1 r2\n"
            "PRINT r3\n"
            "LOADI r4 0\n"
            "SELECT r5 r1 r4\n"
            "PRINT r5\n"
            "HALT");
        const auto st = vm_run(program, small_store());
        CHECK(st.output == std::vector<std::uint64_t>{1, 2});
    }

    TEST_CASE("arithmetic wraps at 64 bits") {
        const auto program = vm_parse(
            "LOADI r0 18446744073709551615\n"
            "LOADI r1 2\n"
            "ADD r2 r0 r1\n"
            "PRINT r2\n"
            "SUB r3 r1 r0\n"
            "PRINT r3\n"
            "MUL r4 r0 r1\n"
            "PRINT r4\n"
            "HALT");
        const auto st = vm_run(program, small_store());
        CHECK(st.output == std::vector<std::uint64_t>{1, 3, 18446744073709551614ull});
    }

    TEST_CASE("gather past the store traps with the pc") {
        const auto program = vm_parse("LOADI r0 9\nGATHER r1 r0\nHALT");
        try {
            (void)vm_run(program, small_store());
            FAIL("expected vm_trap");
        } catch (const vm_trap& e) {
            CHECK(e.pc == 1);
        }
    }

    TEST_CASE("oversized symbols and missing occurrences trap") {
        const auto store = small_store();
        CHECK_THROWS_AS((void)vm_run(vm_parse("LOADI r0 4\nLEN r1\nRANK r2 r0 r1\nHALT"), store),
                        vm_trap);
        CHECK_THROWS_AS(
            (void)vm_run(vm_parse("LOADI r0 3\nLOADI r1 7\nSELECT r2 r0 r1\nHALT"), store),
            vm_trap);
    }

    TEST_CASE("execution stops at the step limit") {
        vm_program long_program;
        for (int i = 0; i < 100; ++i)
            long_program.instructions.push_back({opcode::loadi, 0, 0, 0, 1});
        CHECK_THROWS_AS((void)vm_run(long_program, small_store(), 10), vm_timeout);
    }

    TEST_CASE("halt is optional and stops early when present") {
        const auto st = vm_run(vm_parse("LOADI r0 1\nPRINT r0"), small_store());
        CHECK(st.output == std::vector<std::uint64_t>{1});
        const auto stopped = vm_run(vm_parse("LOADI r0 1\nHALT\nPRINT r0"), small_store());
        CHECK(stopped.output.empty());
    }

    TEST_CASE("a single gather costs one bit per level") {
        std::mt19937_64 rng(61);
        for (unsigned width = 1; width <= 8; ++width) {
            const auto seq = oracle::random_sequence(rng, 32, width);
            const wavelet_tree store(seq, width);
            const auto st = vm_run(vm_parse("LOADI r0 5\nGATHER r1 r0\nHALT"), store);
            CHECK(st.cost == width);
        }
    }

    TEST_CASE("gather-only programs replay the uncompressed array") {
        std::mt19937_64 rng(62);
        for (int instance = 0; instance < 100; ++instance) {
            const unsigned width = 1 + unsigned(rng() % 8);
            const std::size_t n = 1 + rng() % 200;
            const oracle::sequence ref{oracle::random_sequence(rng, n, width)};
            const wavelet_tree store(ref.values, width);
            std::string text;
            std::vector<std::uint64_t> expected;
            for (int step = 0; step < 20; ++step) {
                const std::size_t pos = rng() % n;
                text += "LOADI r0 " + std::to_string(pos) + "\nGATHER r1 r0\nPRINT r1\n";
                expected.push_back(ref.access(pos));
            }
            text += "HALT\n";
            CHECK(vm_run(vm_parse(text), store).output == expected);
        }
    }

    TEST_CASE("query-only programs match the brute-force oracle") {
        std::mt19937_64 rng(63);
        for (int instance = 0; instance < 100; ++instance) {
            const unsigned width = 1 + unsigned(rng() % 6);
            const std::size_t n = 1 + rng() % 200;
            const oracle::sequence ref{oracle::random_sequence(rng, n, width)};
            const wavelet_tree store(ref.values, width);
            const std::uint64_t s = ref.values[rng() % n];
            const std::size_t pos = rng() % (n + 1);
            const std::string text = "LOADI r0 " + std::to_string(s) +
                                     "\nLOADI r1 " + std::to_string(pos) +
                                     "\nRANK r2 r0 r1\nPRINT r2\n"
                                     "LOADI r3 0\nSELECT r4 r0 r3\nPRINT r4\n"
                                     "SUM r5\nPRINT r5\nHALT\n";
            const auto st = vm_run(vm_parse(text), store);
            REQUIRE(st.output.size() == 3);
            CHECK(st.output[0] == ref.rank(s, pos));
            CHECK(st.output[1] == *ref.select(s, 0));
            CHECK(st.output[2] == std::uint64_t(ref.sum()));
        }
    }
}
