#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace noncebench {

// Unsigned 256-bit integer stored as 32 big-endian bytes. Difficulty targets
// and digest values both live in this range; the operations provided are the
// ones target handling needs (ordering, byte placement, rendering), not
// general arithmetic.
struct U256 {
    std::array<std::uint8_t, 32> be{};

    static U256 from_u64(std::uint64_t v) {
        U256 out;
        for (int i = 0; i < 8; ++i) {
            out.be[31 - i] = static_cast<std::uint8_t>(v >> (8 * i));
        }
        return out;
    }

    static U256 max_value() {
        U256 out;
        out.be.fill(0xFF);
        return out;
    }

    bool is_zero() const {
        for (std::uint8_t b : be) {
            if (b != 0) return false;
        }
        return true;
    }

    // Big-endian byte order makes lexicographic comparison numeric.
    auto operator<=>(const U256&) const = default;

    std::string hex() const;      // fixed-width 64 lowercase digits
    std::string decimal() const;
};

}  // namespace noncebench
