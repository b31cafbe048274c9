#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noncebench/u256.hpp"

namespace noncebench {

using Hash256 = std::array<std::uint8_t, 32>;
using Target256 = U256;

inline constexpr std::size_t kHeaderSize = 80;
using HeaderBytes = std::array<std::uint8_t, kHeaderSize>;

// The six-field mining header. Hashes are kept in internal (wire) byte
// order; the reversed display convention exists only at the hex boundary.
struct BlockHeader {
    std::uint32_t version = 0;
    Hash256 prev_hash{};
    Hash256 merkle_root{};
    std::uint32_t timestamp = 0;
    std::uint32_t nbits = 0;
    std::uint32_t nonce = 0;

    bool operator==(const BlockHeader&) const = default;
};

// Compact difficulty encoding: high byte is the exponent, low 3 bytes the
// significand.
struct CompactBits {
    std::uint32_t raw = 0;

    int exponent() const { return static_cast<int>(raw >> 24) - 3; }
    std::uint32_t significand() const { return raw & 0x00FFFFFFu; }

    // 0x00800000 marks a negative target in the signed compact format. Real
    // headers never carry it; decode_nbits treats it as plain magnitude and
    // callers that care surface a warning.
    bool sign_bit_set() const { return (raw & 0x00800000u) != 0; }
};

// significand * 256^exponent. Exponent bytes below 3 shift the significand
// right with truncation. Throws TargetOverflow when the value would not fit
// in 256 bits. When sign_warning is non-null it is set to whether the
// 0x00800000 bit was present (and decoded as magnitude anyway).
Target256 decode_nbits(std::uint32_t bits, bool* sign_warning = nullptr);

// version | prev_hash | merkle_root | timestamp | nbits | nonce, integers
// little-endian, hashes in internal order, exactly 80 bytes.
HeaderBytes serialize_header(const BlockHeader& h);

// Inverse of serialize_header. Throws MalformedInput unless exactly 80 bytes.
BlockHeader parse_header(std::span<const std::uint8_t> bytes);

// Byte-reversed lowercase hex: the block-explorer convention for hashes.
std::string display_hex(const Hash256& hash);

// Parses 64 hex chars (either case) and reverses into internal order.
Hash256 hash_from_display_hex(std::string_view hex);

// Plain (non-reversed) hex helpers for wire bytes.
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

void write_le32(std::uint8_t* out, std::uint32_t v);
std::uint32_t read_le32(const std::uint8_t* in);

}  // namespace noncebench
