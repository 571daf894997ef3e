#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include <revival/identity.hpp>

#include "oracle.hpp"

using revival::path_to_value;
using revival::value_to_path;
using revival::verify_equal;
using revival::wavelet_tree;

TEST_SUITE("identity") {
    TEST_CASE("value_to_path emits MSB-first bits") {
        CHECK(value_to_path(6, 3) == std::vector<std::uint8_t>{1, 1, 0});
        CHECK(value_to_path(0, 5) == std::vector<std::uint8_t>{0, 0, 0, 0, 0});
        CHECK_THROWS_AS(value_to_path(4, 2), std::invalid_argument);
        CHECK_THROWS_AS(value_to_path(0, 0), std::invalid_argument);
    }

    TEST_CASE("path_to_value validates its input") {
        CHECK(path_to_value(std::vector<std::uint8_t>{1, 1, 0}) == 6);
        CHECK_THROWS_AS(path_to_value(std::vector<std::uint8_t>{}), std::invalid_argument);
        CHECK_THROWS_AS(path_to_value(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
        CHECK_THROWS_AS(path_to_value(std::vector<std::uint8_t>(65, 0)), std::invalid_argument);
    }

    TEST_CASE("paths round trip exhaustively up to width 10") {
        for (unsigned width = 1; width <= 10; ++width)
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v)
                CHECK(path_to_value(value_to_path(v, width)) == v);
    }

    TEST_CASE("reversed path reads the LSB-first expansion") {
        for (std::uint64_t v = 0; v < 32; ++v) {
            auto path = value_to_path(v, 5);
            std::reverse(path.begin(), path.end());
            std::uint64_t folded = 0;
            for (unsigned b = 0; b < 5; ++b) folded |= std::uint64_t(path[b]) << (4 - b);
            std::uint64_t reversed = 0;
            for (unsigned b = 0; b < 5; ++b) reversed |= ((v >> b) & 1u) << (4 - b);
            CHECK(folded == reversed);
        }
    }

    TEST_CASE("identity holds on the sorted full range") {
        const std::vector<std::uint64_t> seq{0, 1, 2, 3};
        const auto report = verify_equal(wavelet_tree(seq, 2), seq);
        CHECK(report.holds);
        CHECK(!report.first_violation.has_value());
    }

    TEST_CASE("identity holds vacuously on the empty tree") {
        CHECK(verify_equal(wavelet_tree(std::vector<std::uint64_t>{}, 4), {}).holds);
    }

    TEST_CASE("mismatched sequence reports the first violating position") {
        const std::vector<std::uint64_t> seq{2, 0, 3, 1};
        const wavelet_tree wt(seq, 2);
        const std::vector<std::uint64_t> other{2, 0, 1, 3};
        const auto report = verify_equal(wt, other);
        CHECK(!report.holds);
        CHECK(report.first_violation == 2);
    }

    TEST_CASE("length mismatch is a domain error") {
        const std::vector<std::uint64_t> seq{0, 1};
        const wavelet_tree wt(seq, 1);
        CHECK_THROWS_AS((void)verify_equal(wt, std::vector<std::uint64_t>{0}),
                        std::invalid_argument);
    }

    TEST_CASE("identity holds on random sequences across widths") {
        std::mt19937_64 rng(21);
        for (int instance = 0; instance < 1000; ++instance) {
            const unsigned width = 1 + unsigned(rng() % 8);
            const auto seq = oracle::random_sequence(rng, rng() % 512, width);
            CHECK(verify_equal(wavelet_tree(seq, width), seq).holds);
        }
    }
}
