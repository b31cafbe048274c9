#include <doctest.h>

#include <cstdint>
#include <vector>

#include "noncebench/errors.hpp"
#include "noncebench/ingest.hpp"
#include "noncebench/pow.hpp"
#include "noncebench/search.hpp"
#include "support/oracle.hpp"

using namespace noncebench;

namespace {

constexpr std::uint32_t kEasyBits = 0x20008000;    // ~1 in 512 digests qualify
constexpr std::uint32_t kAcceptAll = 0x20FFFFFF;   // near-maximal target
constexpr std::uint32_t kZeroTarget = 0x1B000000;  // nothing qualifies

BlockHeader easy_header() {
    BlockHeader h;
    h.version = 2;
    h.prev_hash.fill(0xAA);
    h.merkle_root.fill(0xBB);
    h.timestamp = 1300000000;
    h.nbits = kEasyBits;
    return h;
}

BlockHeader random_header(Splitmix64& rng, std::uint32_t nbits) {
    BlockHeader h;
    h.version = static_cast<std::uint32_t>(rng.next() % 4 + 1);
    for (auto& b : h.prev_hash) b = static_cast<std::uint8_t>(rng.next());
    for (auto& b : h.merkle_root) b = static_cast<std::uint8_t>(rng.next());
    h.timestamp = static_cast<std::uint32_t>(rng.next());
    h.nbits = nbits;
    return h;
}

}  // namespace

TEST_CASE("parse_strategy grammar") {
    CHECK(parse_strategy("bf") == SearchStrategy::brute_force());
    CHECK(parse_strategy("ifl:1") == SearchStrategy::inner_for_loop(1));
    CHECK(parse_strategy("ifl:200") == SearchStrategy::inner_for_loop(200));
    CHECK(parse_strategy("ifl:1000").particles == 1000);

    CHECK_THROWS_AS(parse_strategy(""), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("ifl"), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("ifl:"), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("ifl:0"), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("ifl:abc"), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("ifl:20x"), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("bf2"), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy("BF"), InvalidArgument);
}

TEST_CASE("parse_strategy_list") {
    const auto list = parse_strategy_list("bf,ifl:2,ifl:1000");
    REQUIRE(list.size() == 3);
    CHECK(list[0] == SearchStrategy::brute_force());
    CHECK(list[1] == SearchStrategy::inner_for_loop(2));
    CHECK(list[2] == SearchStrategy::inner_for_loop(1000));

    CHECK_THROWS_AS(parse_strategy_list(""), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy_list("bf,"), InvalidArgument);
    CHECK_THROWS_AS(parse_strategy_list("bf,ff"), InvalidArgument);
}

TEST_CASE("strategy names") {
    CHECK(SearchStrategy::brute_force().id() == "bf");
    CHECK(SearchStrategy::inner_for_loop(200).id() == "ifl:200");
    CHECK(SearchStrategy::brute_force().kind_name() == "bf");
    CHECK(SearchStrategy::inner_for_loop(200).kind_name() == "ifl");
}

TEST_CASE("accept-all target returns the start nonce after one hash") {
    BlockHeader h = easy_header();
    h.nbits = kAcceptAll;

    for (std::uint32_t start : {0u, 17u, 4294967295u}) {
        const SearchBudget budget{1000, start};
        const SearchOutcome bf = brute_force_search(h, budget);
        CHECK(bf.found_nonce == start);
        CHECK(bf.hashes_performed == 1);
        CHECK_FALSE(bf.exhausted);
        CHECK(ifl_search(h, 200, budget) == bf);
    }
}

TEST_CASE("zero target never finds and is not exhausted under budget") {
    BlockHeader h = easy_header();
    h.nbits = kZeroTarget;
    const SearchOutcome out = brute_force_search(h, SearchBudget{1000, 0});
    CHECK_FALSE(out.found_nonce.has_value());
    CHECK(out.hashes_performed == 1000);
    CHECK_FALSE(out.exhausted);
    CHECK(ifl_search(h, 6, SearchBudget{1000, 0}) == out);
}

TEST_CASE("easy header pinned outcome and reference cross-check") {
    const BlockHeader h = easy_header();
    const SearchOutcome bf = brute_force_search(h, SearchBudget{1'000'000, 0});
    REQUIRE(bf.found_nonce.has_value());
    CHECK(*bf.found_nonce == 680);
    CHECK(bf.hashes_performed == 681);
    CHECK_FALSE(bf.exhausted);

    const oracle::ReferenceOutcome ref = oracle::reference_search(h, 1'000'000);
    CHECK(ref.found_nonce == bf.found_nonce);
    CHECK(ref.hashes_performed == bf.hashes_performed);
    CHECK(ref.exhausted == bf.exhausted);

    // The found nonce verifies; every earlier nonce fails (minimality).
    BlockHeader check = h;
    check.nonce = *bf.found_nonce;
    CHECK(verify_block(check).valid);
    const Target256 target = decode_nbits(h.nbits);
    for (std::uint32_t n = 0; n < *bf.found_nonce; ++n) {
        check.nonce = n;
        CHECK_FALSE(meets_target(double_sha256(serialize_header(check)), target));
    }
}

TEST_CASE("brute force matches the independent reference on random headers") {
    Splitmix64 rng(2024);
    for (int i = 0; i < 25; ++i) {
        const BlockHeader h = random_header(rng, kEasyBits);
        const SearchOutcome got = brute_force_search(h, SearchBudget{100'000, 0});
        const oracle::ReferenceOutcome want = oracle::reference_search(h, 100'000);
        CHECK(got.found_nonce == want.found_nonce);
        CHECK(got.hashes_performed == want.hashes_performed);
        CHECK(got.exhausted == want.exhausted);
    }
}

TEST_CASE("particles=1 equals brute force") {
    Splitmix64 rng(31337);
    for (int i = 0; i < 50; ++i) {
        const BlockHeader h = random_header(rng, kEasyBits);
        const SearchBudget budget{50'000, 0};
        CHECK(ifl_search(h, 1, budget) == brute_force_search(h, budget));
    }
}

TEST_CASE("ifl equals brute force across the particle set") {
    Splitmix64 rng(99);
    const std::uint32_t particle_set[] = {1, 2, 6, 20, 100, 200, 1000};
    for (int i = 0; i < 40; ++i) {
        const BlockHeader h = random_header(rng, kEasyBits);
        const SearchBudget budget{50'000, 0};
        const SearchOutcome bf = brute_force_search(h, budget);
        for (std::uint32_t p : particle_set) {
            CHECK(ifl_search(h, p, budget) == bf);
        }
    }
}

TEST_CASE("budget boundary around the first qualifying nonce") {
    const BlockHeader h = easy_header();  // first qualifying nonce is 680

    const SearchOutcome miss = brute_force_search(h, SearchBudget{680, 0});
    CHECK_FALSE(miss.found_nonce.has_value());
    CHECK(miss.hashes_performed == 680);
    CHECK_FALSE(miss.exhausted);

    const SearchOutcome hit = brute_force_search(h, SearchBudget{681, 0});
    CHECK(hit.found_nonce == 680);
    CHECK(hit.hashes_performed == 681);

    for (std::uint32_t p : {2u, 6u, 1000u}) {
        CHECK(ifl_search(h, p, SearchBudget{680, 0}) == miss);
        CHECK(ifl_search(h, p, SearchBudget{681, 0}) == hit);
    }
}

TEST_CASE("nonce space exhaustion near the 32-bit ceiling") {
    BlockHeader h = easy_header();
    h.nbits = kZeroTarget;
    const std::uint32_t start = 4294967196u;  // 2^32 - 100

    // Budget larger than the remaining space: clipped, exhausted.
    SearchOutcome out = brute_force_search(h, SearchBudget{1000, start});
    CHECK_FALSE(out.found_nonce.has_value());
    CHECK(out.hashes_performed == 100);
    CHECK(out.exhausted);

    // Budget exactly the remaining space: still exhausted.
    out = brute_force_search(h, SearchBudget{100, start});
    CHECK(out.hashes_performed == 100);
    CHECK(out.exhausted);

    // Budget one short: the space did not end.
    out = brute_force_search(h, SearchBudget{99, start});
    CHECK(out.hashes_performed == 99);
    CHECK_FALSE(out.exhausted);

    for (std::uint32_t p : {1u, 2u, 6u, 20u, 100u, 200u, 1000u}) {
        CHECK(ifl_search(h, p, SearchBudget{1000, start}).exhausted);
        CHECK(ifl_search(h, p, SearchBudget{1000, start}).hashes_performed == 100);
        CHECK_FALSE(ifl_search(h, p, SearchBudget{99, start}).exhausted);
    }
}

TEST_CASE("a find at high start nonce stays inside 32 bits") {
    const BlockHeader h = easy_header();
    const std::uint32_t start = 4294962296u;  // 2^32 - 5000
    const SearchOutcome bf = brute_force_search(h, SearchBudget{100'000, start});
    REQUIRE(bf.found_nonce.has_value());
    CHECK(*bf.found_nonce == 4294962305u);
    CHECK(bf.hashes_performed == 10);
    CHECK_FALSE(bf.exhausted);
    CHECK(ifl_search(h, 200, SearchBudget{100'000, start}) == bf);
}

TEST_CASE("run_search dispatch") {
    const BlockHeader h = easy_header();
    const SearchBudget budget{10'000, 0};
    CHECK(run_search(h, SearchStrategy::brute_force(), budget) ==
          brute_force_search(h, budget));
    CHECK(run_search(h, SearchStrategy::inner_for_loop(200), budget) ==
          ifl_search(h, 200, budget));
    CHECK(run_search(h, SearchStrategy::inner_for_loop(1), budget) ==
          brute_force_search(h, budget));
}

TEST_CASE("argument validation") {
    const BlockHeader h = easy_header();
    CHECK_THROWS_AS(ifl_search(h, 0, SearchBudget{100, 0}), InvalidArgument);
    CHECK_THROWS_AS(brute_force_search(h, SearchBudget{0, 0}), InvalidArgument);
    CHECK_THROWS_AS(ifl_search(h, 5, SearchBudget{0, 0}), InvalidArgument);

    BlockHeader bad = h;
    bad.nbits = 0x23000001;
    CHECK_THROWS_AS(brute_force_search(bad, SearchBudget{10, 0}), TargetOverflow);
    CHECK_THROWS_AS(ifl_search(bad, 5, SearchBudget{10, 0}), TargetOverflow);
}
