#include "noncebench/header.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "noncebench/errors.hpp"

namespace noncebench {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

std::string U256::hex() const {
    std::string out(64, '0');
    for (std::size_t i = 0; i < 32; ++i) {
        out[2 * i] = kHexDigits[be[i] >> 4];
        out[2 * i + 1] = kHexDigits[be[i] & 0x0F];
    }
    return out;
}

std::string U256::decimal() const {
    std::array<std::uint8_t, 32> work = be;
    std::string digits;
    for (;;) {
        bool all_zero = true;
        std::uint32_t rem = 0;
        for (std::size_t i = 0; i < 32; ++i) {
            const std::uint32_t cur = rem * 256u + work[i];
            work[i] = static_cast<std::uint8_t>(cur / 10u);
            rem = cur % 10u;
            if (work[i] != 0) all_zero = false;
        }
        digits.push_back(static_cast<char>('0' + rem));
        if (all_zero) break;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Target256 decode_nbits(std::uint32_t bits, bool* sign_warning) {
    const CompactBits compact{bits};
    if (sign_warning != nullptr) {
        *sign_warning = compact.sign_bit_set();
    }
    const std::uint32_t significand = compact.significand();
    Target256 target;
    if (significand == 0) {
        return target;
    }

    const int exponent = compact.exponent();
    if (exponent < 0) {
        // Negative power of 256: shift the significand right, truncating.
        const std::uint32_t shifted = significand >> (8 * -exponent);
        return U256::from_u64(shifted);
    }

    const std::uint8_t b2 = static_cast<std::uint8_t>(significand >> 16);
    const std::uint8_t b1 = static_cast<std::uint8_t>(significand >> 8);
    const std::uint8_t b0 = static_cast<std::uint8_t>(significand);
    // Byte k of the significand lands on power exponent + k; power 31 is the
    // highest that fits in 256 bits.
    if ((b2 != 0 && exponent > 29) || (b1 != 0 && exponent > 30) || exponent > 31) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "0x%08x", bits);
        throw TargetOverflow(std::string("compact bits ") + buf +
                             " decode exceeds 2^256 - 1");
    }
    target.be[31 - exponent] = b0;
    if (exponent + 1 <= 31) target.be[31 - (exponent + 1)] = b1;
    if (exponent + 2 <= 31) target.be[31 - (exponent + 2)] = b2;
    return target;
}

HeaderBytes serialize_header(const BlockHeader& h) {
    HeaderBytes out{};
    write_le32(out.data(), h.version);
    std::memcpy(out.data() + 4, h.prev_hash.data(), 32);
    std::memcpy(out.data() + 36, h.merkle_root.data(), 32);
    write_le32(out.data() + 68, h.timestamp);
    write_le32(out.data() + 72, h.nbits);
    write_le32(out.data() + 76, h.nonce);
    return out;
}

BlockHeader parse_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kHeaderSize) {
        throw MalformedInput("header must be exactly 80 bytes, got " +
                             std::to_string(bytes.size()));
    }
    BlockHeader h;
    h.version = read_le32(bytes.data());
    std::memcpy(h.prev_hash.data(), bytes.data() + 4, 32);
    std::memcpy(h.merkle_root.data(), bytes.data() + 36, 32);
    h.timestamp = read_le32(bytes.data() + 68);
    h.nbits = read_le32(bytes.data() + 72);
    h.nonce = read_le32(bytes.data() + 76);
    return h;
}

std::string display_hex(const Hash256& hash) {
    std::string out(64, '0');
    for (std::size_t i = 0; i < 32; ++i) {
        const std::uint8_t b = hash[31 - i];
        out[2 * i] = kHexDigits[b >> 4];
        out[2 * i + 1] = kHexDigits[b & 0x0F];
    }
    return out;
}

Hash256 hash_from_display_hex(std::string_view hex) {
    if (hex.size() != 64) {
        throw MalformedInput("hash hex must be 64 chars, got " + std::to_string(hex.size()));
    }
    Hash256 out{};
    for (std::size_t i = 0; i < 32; ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw MalformedInput("invalid hex digit in hash");
        }
        out[31 - i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    std::string out(bytes.size() * 2, '0');
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        out[2 * i] = kHexDigits[bytes[i] >> 4];
        out[2 * i + 1] = kHexDigits[bytes[i] & 0x0F];
    }
    return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw MalformedInput("hex string has odd length");
    }
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw MalformedInput("invalid hex digit");
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

void write_le32(std::uint8_t* out, std::uint32_t v) {
    out[0] = static_cast<std::uint8_t>(v);
    out[1] = static_cast<std::uint8_t>(v >> 8);
    out[2] = static_cast<std::uint8_t>(v >> 16);
    out[3] = static_cast<std::uint8_t>(v >> 24);
}

std::uint32_t read_le32(const std::uint8_t* in) {
    return static_cast<std::uint32_t>(in[0]) |
           (static_cast<std::uint32_t>(in[1]) << 8) |
           (static_cast<std::uint32_t>(in[2]) << 16) |
           (static_cast<std::uint32_t>(in[3]) << 24);
}

}  // namespace noncebench
