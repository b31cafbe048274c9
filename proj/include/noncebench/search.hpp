#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noncebench/header.hpp"

namespace noncebench {

enum class StrategyKind { BruteForce, InnerForLoop };

struct SearchStrategy {
    StrategyKind kind = StrategyKind::BruteForce;
    std::uint32_t particles = 1;  // ≥ 1; brute force behaves as 1

    static SearchStrategy brute_force() { return {StrategyKind::BruteForce, 1}; }
    static SearchStrategy inner_for_loop(std::uint32_t p) {
        return {StrategyKind::InnerForLoop, p};
    }

    // CLI/display form: "bf" or "ifl:P".
    std::string id() const;
    // CSV strategy column: "bf" or "ifl" (particles travel separately).
    std::string kind_name() const;

    bool operator==(const SearchStrategy&) const = default;
};

// Parses "bf" or "ifl:P" with P a positive integer. Throws InvalidArgument
// on anything else.
SearchStrategy parse_strategy(std::string_view text);

// Comma-separated strategy specs, e.g. "bf,ifl:2,ifl:200".
std::vector<SearchStrategy> parse_strategy_list(std::string_view text);

struct SearchBudget {
    std::uint64_t max_hashes = 1;   // ≥ 1
    std::uint32_t start_nonce = 0;
};

struct SearchOutcome {
    std::optional<std::uint32_t> found_nonce;
    std::uint64_t hashes_performed = 0;
    bool exhausted = false;  // nonce space ended at or before the budget

    bool operator==(const SearchOutcome&) const = default;
};

// Tests nonces start_nonce, start_nonce+1, ... sequentially until a digest
// strictly beats the header's target, the budget runs out, or the 32-bit
// nonce space ends. The header's own nonce field is ignored.
SearchOutcome brute_force_search(const BlockHeader& h, const SearchBudget& budget);

// Same nonce sequence as brute force, restructured as an outer loop over
// batches of `particles` single-increment inner steps. The final batch is
// clipped so attempts never exceed the budget or the nonce ceiling.
SearchOutcome ifl_search(const BlockHeader& h, std::uint32_t particles,
                         const SearchBudget& budget);

SearchOutcome run_search(const BlockHeader& h, const SearchStrategy& strategy,
                         const SearchBudget& budget);

}  // namespace noncebench
