#include "noncebench/pow.hpp"

#include <openssl/sha.h>

#include <algorithm>

namespace noncebench {

Digest256 sha256(std::span<const std::uint8_t> data) {
    Digest256 out;
    SHA256(data.data(), data.size(), out.data());
    return out;
}

Digest256 double_sha256(std::span<const std::uint8_t> data) {
    Digest256 first;
    SHA256(data.data(), data.size(), first.data());
    Digest256 out;
    SHA256(first.data(), first.size(), out.data());
    return out;
}

U256 digest_as_integer(const Digest256& digest) {
    U256 out;
    // Reversing the digest makes its last stored byte the most significant.
    for (std::size_t i = 0; i < 32; ++i) {
        out.be[i] = digest[31 - i];
    }
    return out;
}

bool meets_target(const Digest256& digest, const Target256& target) {
    return digest_as_integer(digest) < target;
}

VerificationResult verify_block(const BlockHeader& h) {
    VerificationResult result;
    const Target256 target = decode_nbits(h.nbits, &result.sign_bit_warning);
    const HeaderBytes bytes = serialize_header(h);
    const Digest256 digest = double_sha256(bytes);
    result.valid = meets_target(digest, target);
    result.hash_display = display_hex(digest);
    result.target_hex = target.hex();
    return result;
}

}  // namespace noncebench
