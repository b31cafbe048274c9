#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noncebench/header.hpp"

namespace noncebench {

// One line of a fixture file: header fields in explorer conventions
// (display-order hex, decimal integers). nonce and hash_display are present
// only for solved blocks pulled from the chain.
struct BlockFixture {
    std::uint64_t height = 0;
    std::uint32_t version = 0;
    std::string prev_hash_display;
    std::string merkle_root_display;
    std::uint32_t timestamp = 0;
    std::uint32_t bits = 0;
    std::optional<std::uint32_t> nonce;
    std::optional<std::string> hash_display;

    // Assembled header; nonce field is 0 when the fixture has none.
    BlockHeader header() const;
    std::string id() const { return std::to_string(height); }
    std::string to_json_line() const;

    bool operator==(const BlockFixture&) const = default;
};

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::uint64_t count = 0;        // ≥ 1
    std::uint64_t max_height = 557132;
};

// splitmix64: tiny, well-documented, identical output everywhere.
class Splitmix64 {
public:
    explicit Splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound ≥ 1.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// `count` distinct heights uniformly without replacement from
// [1, max_height], via a virtual partial Fisher-Yates shuffle driven by
// splitmix64. Deterministic per seed, identical across platforms.
std::vector<std::uint64_t> sample_heights(const SamplerConfig& cfg);

// Parses one fixture JSON object; validates hex lengths and 32-bit ranges.
// Fixtures carrying both nonce and hash_display must verify: the recomputed
// hash must equal hash_display and meet the fixture's own target.
BlockFixture parse_fixture_line(std::string_view line);

// Line-delimited JSON file of fixtures. Blank lines are skipped; any bad
// line fails the load with its line number.
std::vector<BlockFixture> load_fixtures(const std::filesystem::path& path);

}  // namespace noncebench
