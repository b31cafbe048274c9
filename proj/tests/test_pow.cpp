#include <doctest.h>

#include <string>
#include <vector>

#include "noncebench/errors.hpp"
#include "noncebench/ingest.hpp"
#include "noncebench/pow.hpp"
#include "support/oracle.hpp"

using namespace noncebench;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
    return {s.begin(), s.end()};
}

BlockHeader genesis_header() {
    BlockHeader h;
    h.version = 1;
    h.merkle_root = hash_from_display_hex(
        "4a5e1e4baab89f3a32518a88c31bc87f618f76673e2cc77ab2127b7afdeda33b");
    h.timestamp = 1231006505;
    h.nbits = 486604799;
    h.nonce = 2083236893;
    return h;
}

}  // namespace

TEST_CASE("sha256 and double_sha256 pinned digests") {
    CHECK(to_hex(sha256(bytes_of("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256(bytes_of(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(double_sha256(bytes_of(""))) ==
          "5df6e0e2761359d30a8275058e299fcc0381534545f55cf43e41983f5d4c9456");
    CHECK(double_sha256(bytes_of("x")) == sha256(sha256(bytes_of("x"))));
}

TEST_CASE("digest_as_integer follows the display reversal") {
    Digest256 d{};
    CHECK(digest_as_integer(d).is_zero());

    d[31] = 0x01;  // last stored byte is most significant
    U256 expect;
    expect.be[0] = 0x01;
    CHECK(digest_as_integer(d) == expect);

    d = Digest256{};
    d[0] = 0x01;
    CHECK(digest_as_integer(d) == U256::from_u64(1));
}

TEST_CASE("digest_as_integer matches the bignum oracle") {
    Splitmix64 rng(777);
    for (int i = 0; i < 500; ++i) {
        Digest256 d;
        for (auto& b : d) b = static_cast<std::uint8_t>(rng.next());
        CHECK(oracle::u256_value(digest_as_integer(d)) == oracle::digest_value(d));
    }
}

TEST_CASE("meets_target is strict") {
    Digest256 d{};
    d[0] = 0x05;  // integer value 5

    CHECK(meets_target(d, U256::from_u64(6)));
    CHECK_FALSE(meets_target(d, U256::from_u64(5)));  // equality fails
    CHECK_FALSE(meets_target(d, U256::from_u64(4)));
    CHECK_FALSE(meets_target(d, Target256{}));  // nothing beats target 0
    CHECK(meets_target(d, U256::max_value()));

    // The one digest the maximal representable target rejects.
    Digest256 all_ff;
    all_ff.fill(0xFF);
    CHECK_FALSE(meets_target(all_ff, U256::max_value()));
    CHECK(meets_target(Digest256{}, U256::from_u64(1)));
}

TEST_CASE("verify_block on the genesis block") {
    const VerificationResult v = verify_block(genesis_header());
    CHECK(v.valid);
    CHECK(v.hash_display ==
          "000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f");
    CHECK(v.target_hex ==
          "00000000ffff0000000000000000000000000000000000000000000000000000");
    CHECK_FALSE(v.sign_bit_warning);
}

TEST_CASE("verify_block rejects a wrong nonce") {
    BlockHeader h = genesis_header();
    h.nonce += 1;
    const VerificationResult v = verify_block(h);
    CHECK_FALSE(v.valid);
    CHECK(v.hash_display !=
          "000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f");
}

TEST_CASE("verify_block propagates target overflow") {
    BlockHeader h = genesis_header();
    h.nbits = 0x23000001;
    CHECK_THROWS_AS(verify_block(h), TargetOverflow);
}

TEST_CASE("verify_block surfaces the sign-bit warning") {
    BlockHeader h = genesis_header();
    h.nbits = 0x1D80FFFF;
    const VerificationResult v = verify_block(h);
    CHECK(v.sign_bit_warning);
}
