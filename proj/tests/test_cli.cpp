#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <revival/cli.hpp>

namespace fs = std::filesystem;

namespace {

// Scratch directory wiped per test case.
struct scratch_dir {
    fs::path root;

    scratch_dir() {
        root = fs::temp_directory_path() /
               ("rwt-test-" + std::to_string(std::uintptr_t(this)) + "-" +
                std::to_string(std::rand()));
        fs::create_directories(root);
    }
    ~scratch_dir() { fs::remove_all(root); }

    std::string file(const std::string& name, const std::string& contents) const {
        const fs::path p = root / name;
        std::ofstream os(p, std::ios::binary);
        os << contents;
        return p.string();
    }

    std::string path(const std::string& name) const { return (root / name).string(); }
};

struct run_result {
    int code;
    std::string out;
    std::string err;
};

run_result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = revival::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("build then query a plain byte index") {
        scratch_dir dir;
        const auto input = dir.file("input.bin", std::string("\x02\x00\x03\x01", 4));
        const auto index = dir.path("index.rwt");

        auto r = run({"build", "--input", input, "--mode", "bytes", "--width", "2", "--out", index});
        REQUIRE(r.code == 0);

        CHECK(run({"access", index, "0"}).out == "2\n");
        CHECK(run({"access", index, "3"}).out == "1\n");
        CHECK(run({"rank", index, "3", "4"}).out == "1\n");
        CHECK(run({"select", index, "3", "0"}).out == "2\n");
        CHECK(run({"sum", index}).out == "6\n");
        CHECK(run({"count", index, "0"}).out == "1\n");
        CHECK(run({"rangecount", index, "0", "4", "1", "3"}).out == "3\n");

        const auto verify = run({"verify", index, "--against", input});
        CHECK(verify.code == 0);
        CHECK(verify.out == "OK\n");
    }

    TEST_CASE("u64text mode infers the width") {
        scratch_dir dir;
        const auto input = dir.file("values.txt", "2 0 3 1\n");
        const auto index = dir.path("index.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "u64text", "--out", index}).code == 0);
        CHECK(run({"sum", index}).out == "6\n");
        CHECK(run({"access", index, "2"}).out == "3\n");

        const auto stats = run({"stats", index});
        CHECK(stats.out.find("payload_bits=8\n") == 0);
        CHECK(stats.out.find("raw_bits=8\n") != std::string::npos);
    }

    TEST_CASE("u64text verify round trip") {
        scratch_dir dir;
        const auto input = dir.file("values.txt", "9 200 13 0 13\n");
        const auto index = dir.path("index.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "u64text", "--out", index}).code == 0);
        const auto r = run({"verify", index, "--against", input, "--mode", "u64text"});
        CHECK(r.code == 0);
        CHECK(r.out == "OK\n");
    }

    TEST_CASE("stats of an empty index") {
        scratch_dir dir;
        const auto input = dir.file("empty.bin", "");
        const auto index = dir.path("empty.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "bytes", "--out", index}).code == 0);
        const auto r = run({"stats", index});
        CHECK(r.code == 0);
        CHECK(r.out ==
              "payload_bits=0\noverhead_bits=512\nraw_bits=0\nratio=0.000000\n");
    }

    TEST_CASE("u64text rejects malformed tokens") {
        scratch_dir dir;
        const auto input = dir.file("values.txt", "3 x 1");
        const auto r = run({"build", "--input", input, "--mode", "u64text", "--out",
                            dir.path("i.rwt")});
        CHECK(r.code == 1);
        CHECK(r.err.find("token 1") != std::string::npos);
    }

    TEST_CASE("pattern table of a narrow ascii run") {
        scratch_dir dir;
        const auto input = dir.file("defg.txt", "DEFG");
        const auto r = run({"patterns", "--input", input, "--mode", "bytes", "--width", "7"});
        CHECK(r.code == 0);
        CHECK(r.out == "base=0x44 mask=1111100 fixed=1000100 k=2\n");
    }

    TEST_CASE("full build round trips through verify and queries") {
        scratch_dir dir;
        const auto input = dir.file("defg.txt", "DEFG");
        const auto index = dir.path("defg.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "bytes", "--width", "7", "--full",
                     "--out", index})
                    .code == 0);

        CHECK(run({"access", index, "2"}).out == "70\n");
        CHECK(run({"rank", index, "70", "4"}).out == "1\n");
        CHECK(run({"select", index, "71", "0"}).out == "3\n");
        CHECK(run({"sum", index}).out == std::to_string(0x44 + 0x45 + 0x46 + 0x47) + "\n");
        CHECK(run({"count", index, "68"}).out == "1\n");
        CHECK(run({"count", index, "90"}).out == "0\n");
        CHECK(run({"rangecount", index, "0", "4", "69", "70"}).out == "2\n");

        const auto verify = run({"verify", index, "--against", input});
        CHECK(verify.code == 0);
        CHECK(verify.out == "OK\n");

        const auto stats = run({"stats", index});
        CHECK(stats.out.find("payload_bits=8\n") == 0);
        CHECK(stats.out.find("raw_bits=28\n") != std::string::npos);
    }

    TEST_CASE("verify reports the first differing position") {
        scratch_dir dir;
        const auto input = dir.file("input.bin", std::string("\x01\x02\x03", 3));
        const auto other = dir.file("other.bin", std::string("\x01\x00\x03", 3));
        const auto index = dir.path("index.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "bytes", "--out", index}).code == 0);

        const auto bad = run({"verify", index, "--against", other});
        CHECK(bad.code == 1);
        CHECK(bad.out == "violation at 1\n");

        const auto shorter = dir.file("short.bin", std::string("\x01", 1));
        const auto mismatch = run({"verify", index, "--against", shorter});
        CHECK(mismatch.code == 1);
        CHECK(mismatch.err.find("length") != std::string::npos);
    }

    TEST_CASE("access on an empty index fails cleanly") {
        scratch_dir dir;
        const auto input = dir.file("empty.bin", "");
        const auto index = dir.path("empty.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "bytes", "--out", index}).code == 0);
        const auto r = run({"access", index, "0"});
        CHECK(r.code == 1);
        CHECK(r.err.find("position 0") != std::string::npos);
    }

    TEST_CASE("vm subcommand prints outputs then the gather cost") {
        scratch_dir dir;
        const auto input = dir.file("input.bin", std::string("\x02\x00\x03\x01", 4));
        const auto index = dir.path("index.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "bytes", "--width", "2", "--out", index})
                    .code == 0);
        const auto program = dir.file("prog.vm",
                                      "# fetch position 3, then aggregate\n"
                                      "LOADI r0 3\n"
                                      "GATHER r1 r0\n"
                                      "PRINT r1\n"
                                      "SUM r2\n"
                                      "PRINT r2\n"
                                      "HALT\n");
        const auto r = run({"vm", index, program});
        CHECK(r.code == 0);
        CHECK(r.out == "1\n6\ncost=2\n");
    }

    TEST_CASE("vm rejects pattern indexes") {
        scratch_dir dir;
        const auto input = dir.file("defg.txt", "DEFG");
        const auto index = dir.path("defg.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "bytes", "--width", "7", "--full",
                     "--out", index})
                    .code == 0);
        const auto program = dir.file("prog.vm", "SUM r0\nPRINT r0\nHALT\n");
        const auto r = run({"vm", index, program});
        CHECK(r.code == 1);
        CHECK(r.err.find("plain") != std::string::npos);
    }

    TEST_CASE("vm surfaces parse errors with their line") {
        scratch_dir dir;
        const auto input = dir.file("input.bin", std::string("\x01", 1));
        const auto index = dir.path("index.rwt");
        REQUIRE(run({"build", "--input", input, "--mode", "bytes", "--out", index}).code == 0);
        const auto program = dir.file("prog.vm", "BADOP r0\n");
        const auto r = run({"vm", index, program});
        CHECK(r.code == 1);
        CHECK(r.err.find("line 1") != std::string::npos);
    }

    TEST_CASE("usage errors exit with 2") {
        CHECK(run({}).code == 2);
        CHECK(run({"nonsense"}).code == 2);
        CHECK(run({"build", "--input"}).code == 2);
        CHECK(run({"access", "only-index"}).code == 2);
        CHECK(run({"build", "--input", "x", "--mode", "csv", "--out", "y"}).code == 2);
    }

    TEST_CASE("help prints to stdout and exits 0") {
        const auto r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("build") != std::string::npos);
        CHECK(r.out.find("rangecount") != std::string::npos);
    }

    TEST_CASE("missing files and oversized symbols exit with 1") {
        scratch_dir dir;
        CHECK(run({"access", dir.path("absent.rwt"), "0"}).code == 1);
        CHECK(run({"build", "--input", dir.path("absent.bin"), "--mode", "bytes", "--out",
                   dir.path("i.rwt")})
                  .code == 1);

        const auto wide = dir.file("wide.bin", std::string("\x02\x09", 2));
        const auto r = run({"build", "--input", wide, "--mode", "bytes", "--width", "3", "--out",
                            dir.path("i.rwt")});
        CHECK(r.code == 1);
        CHECK(r.err.find("position 1") != std::string::npos);
    }

    TEST_CASE("empty full build cannot infer an alphabet") {
        scratch_dir dir;
        const auto input = dir.file("empty.bin", "");
        const auto r = run({"build", "--input", input, "--mode", "bytes", "--full", "--out",
                            dir.path("i.rwt")});
        CHECK(r.code == 1);
        CHECK(r.err.find("alphabet") != std::string::npos);
    }
}
