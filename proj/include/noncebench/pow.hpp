#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "noncebench/header.hpp"

namespace noncebench {

using Digest256 = Hash256;

Digest256 sha256(std::span<const std::uint8_t> data);

// SHA-256 applied twice: the block hash function.
Digest256 double_sha256(std::span<const std::uint8_t> data);

// Numeric value of a digest under the display convention: the digest bytes
// are reversed, then read as a big-endian integer. Equivalently, byte 31 of
// the stored digest is the most significant.
U256 digest_as_integer(const Digest256& digest);

// Strict comparison: a digest meets the target only when its integer value
// is less than the target.
bool meets_target(const Digest256& digest, const Target256& target);

struct VerificationResult {
    bool valid = false;
    std::string hash_display;   // display hex of the recomputed hash
    std::string target_hex;     // 64-digit hex of the decoded target
    bool sign_bit_warning = false;
};

// Recomputes the header hash and checks it against the header's own nbits
// target. Propagates TargetOverflow from nbits decoding.
VerificationResult verify_block(const BlockHeader& h);

}  // namespace noncebench
