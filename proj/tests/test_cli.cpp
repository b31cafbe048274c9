#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "noncebench/header.hpp"
#include "noncebench/ingest.hpp"

using namespace noncebench;

namespace {

struct CmdResult {
    int exit_code;
    std::string output;
};

// Runs the installed binary through the shell; stderr is dropped unless the
// caller folds it in with `2>&1`.
CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(NONCEBENCH_CLI_PATH) + " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixtures_file(const char* name) {
    return (std::filesystem::path(FIXTURES_DIR) / name).string();
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

constexpr const char* kGenesisHex80 =
    "0100000000000000000000000000000000000000000000000000000000000000"
    "000000003ba3edfd7a7b12b27ac72c3e67768f617fc81bc3888a51323a9fb8aa"
    "4b1e5e4a29ab5f49ffff001d1dac2b7c";

std::string easy_header_hex() {
    BlockHeader h;
    h.version = 2;
    h.prev_hash.fill(0xAA);
    h.merkle_root.fill(0xBB);
    h.timestamp = 1300000000;
    h.nbits = 0x20008000;
    h.nonce = 0;
    return to_hex(serialize_header(h));
}

}  // namespace

TEST_CASE("cli target expands compact bits") {
    const CmdResult r = run_cli("target --nbits 453610282");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "hex=0000000000098b2a000000000000000000000000000000000000000000000000"
          " decimal="
          "3926013280397599483741094494745234959951218212740030386090803200\n");

    const CmdResult max_diff1 = run_cli("target --nbits 486604799");
    CHECK(max_diff1.exit_code == 0);
    CHECK(max_diff1.output ==
          "hex=00000000ffff0000000000000000000000000000000000000000000000000000"
          " decimal="
          "26959535291011309493156476344723991336010898738574164086137773096960\n");

    // Overflowing exponent: decodes nowhere, not-found class.
    CHECK(run_cli("target --nbits 587202561").exit_code == 1);
    // Valid integer, too wide for compact bits: usage error.
    CHECK(run_cli("target --nbits 4294967296").exit_code == 2);

    // Sign bit decodes as magnitude and warns on stderr.
    const CmdResult warn = run_cli("target --nbits 461998890", true);
    CHECK(warn.exit_code == 0);
    CHECK(warn.output.find("warning: nbits sign bit set") != std::string::npos);
    CHECK(warn.output.find("hex=0000000000898b2a") != std::string::npos);
}

TEST_CASE("cli verify recomputes and judges a header") {
    const CmdResult good = run_cli(std::string("verify --header ") + kGenesisHex80);
    CHECK(good.exit_code == 0);
    CHECK(good.output ==
          "meets=true"
          " hash=000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f"
          " target=00000000ffff0000000000000000000000000000000000000000000000000000\n");

    // Same header with the nonce zeroed: hash no longer meets the target.
    std::string broken(kGenesisHex80);
    broken.replace(broken.size() - 8, 8, "00000000");
    const CmdResult bad = run_cli("verify --header " + broken);
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.rfind("meets=false", 0) == 0);

    CHECK(run_cli("verify --header abcd").exit_code == 2);
    CHECK(run_cli("verify").exit_code == 2);  // --header is required
}

TEST_CASE("cli mine finds the pinned easy nonce with either strategy") {
    const std::string hex = easy_header_hex();
    const std::string expected =
        "nonce=680"
        " hash=004382065c83fb0104902f9dceecbca502fdc6975f2745f7430c41a74d170d8b"
        " hashes=681\n";

    const CmdResult bf = run_cli("mine --header " + hex + " --strategy bf");
    CHECK(bf.exit_code == 0);
    CHECK(bf.output == expected);

    const CmdResult ifl =
        run_cli("mine --header " + hex + " --strategy ifl --particles 200");
    CHECK(ifl.exit_code == 0);
    CHECK(ifl.output == expected);

    // One hash short of the solution: budget exhausts first.
    const CmdResult short_budget =
        run_cli("mine --header " + hex + " --max-hashes 680");
    CHECK(short_budget.exit_code == 1);
    CHECK(short_budget.output == "budget reached hashes=680\n");

    // A zero target never matches: the budget always runs out.
    BlockHeader impossible;
    impossible.version = 2;
    impossible.prev_hash.fill(0xAA);
    impossible.merkle_root.fill(0xBB);
    impossible.timestamp = 1300000000;
    impossible.nbits = 0x1B000000;
    const CmdResult miss = run_cli(
        "mine --header " + to_hex(serialize_header(impossible)) + " --max-hashes 1000");
    CHECK(miss.exit_code == 1);
    CHECK(miss.output == "budget reached hashes=1000\n");

    // Starting at the top of the nonce space exhausts it.
    const CmdResult exhausted = run_cli(
        "mine --header " + to_hex(serialize_header(impossible)) +
        " --start-nonce 4294967295 --max-hashes 1000");
    CHECK(exhausted.exit_code == 1);
    CHECK(exhausted.output == "exhausted hashes=1\n");
}

TEST_CASE("cli mine usage errors") {
    const std::string hex = easy_header_hex();
    CHECK(run_cli("mine").exit_code == 2);  // neither --fixture nor --header
    CHECK(run_cli("mine --header zz").exit_code == 2);
    CHECK(run_cli("mine --header " + hex + " --strategy ifl").exit_code == 2);
    CHECK(run_cli("mine --header " + hex + " --strategy bf --particles 4").exit_code == 2);
    CHECK(run_cli("mine --header " + hex + " --strategy warp").exit_code == 2);
    CHECK(run_cli("mine --fixture x.jsonl --header " + hex).exit_code == 2);
    CHECK(run_cli("mine --fixture /nonexistent/blocks.jsonl").exit_code == 3);
}

TEST_CASE("cli mine reproduces a chain block from its fixture") {
    const std::string fx = fixtures_file("blocks.jsonl");
    const CmdResult r = run_cli("mine --fixture " + fx +
                                " --height 0 --start-nonce 2083236893 --max-hashes 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "nonce=2083236893"
          " hash=000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f"
          " hashes=1\n");

    // Multi-fixture file without --height is ambiguous.
    CHECK(run_cli("mine --fixture " + fx).exit_code == 2);
    CHECK(run_cli("mine --fixture " + fx + " --height 31337").exit_code == 2);
}

TEST_CASE("cli sample is deterministic to the byte") {
    const CmdResult a = run_cli("sample --seed 42 --count 3");
    CHECK(a.exit_code == 0);
    CHECK(a.output == "180942\n324280\n200301\n");
    const CmdResult b = run_cli("sample --seed 42 --count 3");
    CHECK(b.output == a.output);

    CHECK(run_cli("sample --seed 7 --count 3 --max-height 10").output == "8\n1\n5\n");
    CHECK(run_cli("sample --seed 1 --count 0").exit_code == 2);
    CHECK(run_cli("sample --count 3").exit_code == 2);  // --seed is required
}

TEST_CASE("cli fetch maps transport problems to exit codes") {
    // Connection refused: network class.
    CHECK(run_cli("fetch --height 0 --endpoint http://127.0.0.1:1").exit_code == 4);
    // No endpoint anywhere: usage class.
    const std::string unset = "env -u NONCEBENCH_API " + std::string(NONCEBENCH_CLI_PATH);
    std::FILE* pipe = popen((unset + " fetch --height 0 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[256];
    while (std::fread(buf, 1, sizeof buf, pipe) > 0) {
    }
    CHECK(WEXITSTATUS(pclose(pipe)) == 2);
}

TEST_CASE("cli bench and report agree") {
    const auto dir = std::filesystem::temp_directory_path() / "noncebench_cli_bench";
    std::filesystem::remove_all(dir);
    const std::string out1 = (dir / "first").string();
    const std::string out2 = (dir / "second").string();

    const CmdResult bench =
        run_cli("bench --fixtures " + fixtures_file("blocks.jsonl") +
                " --cap 500 --repeats 1 --strategies bf,ifl:2 --out " + out1);
    CHECK(bench.exit_code == 0);
    CHECK(bench.output.find("wrote 6 records") != std::string::npos);

    REQUIRE(std::filesystem::exists(dir / "first" / "runs.csv"));
    REQUIRE(std::filesystem::exists(dir / "first" / "report.csv"));
    REQUIRE(std::filesystem::exists(dir / "first" / "report.txt"));
    REQUIRE(std::filesystem::exists(dir / "first" / "report.json"));

    const std::string runs = slurp(dir / "first" / "runs.csv");
    CHECK(runs.rfind("block_id,strategy,particles,cap,run_index,elapsed_s,hashes,found_nonce\n",
                     0) == 0);
    // Header line plus 3 blocks x 2 strategies x 1 repeat.
    std::size_t lines = 0;
    for (char c : runs) lines += (c == '\n');
    CHECK(lines == 7);

    const CmdResult report =
        run_cli("report --runs " + out1 + "/runs.csv --out " + out2);
    CHECK(report.exit_code == 0);
    // Re-aggregation from the persisted records reproduces the report.
    CHECK(slurp(dir / "second" / "report.csv") == slurp(dir / "first" / "report.csv"));

    CHECK(run_cli("bench --fixtures " + fixtures_file("blocks.jsonl") +
                  " --cap 10 --repeats 1 --strategies ifl:2 --out " + out1)
              .exit_code == 2);  // baseline missing
    CHECK(run_cli("bench --fixtures " + fixtures_file("blocks.jsonl") +
                  " --cap 10 --repeats 1 --strategies bf,ifl:0 --out " + out1)
              .exit_code == 2);  // bad particle count
    CHECK(run_cli("report --runs /nonexistent/runs.csv --out " + out2).exit_code == 3);

    std::filesystem::remove_all(dir);
}

TEST_CASE("cli top-level grammar") {
    CHECK(run_cli("").exit_code == 2);            // a subcommand is required
    CHECK(run_cli("frobnicate").exit_code == 2);  // unknown subcommand
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("mine --help").exit_code == 0);
}
