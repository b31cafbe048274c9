#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noncebench/header.hpp"
#include "noncebench/search.hpp"

namespace noncebench {

struct BenchConfig {
    std::uint64_t cap = 30'000'000;   // hash attempts per run
    int repeats = 2;                  // runs per (block, strategy)
    std::vector<SearchStrategy> strategies;
    int warmup_runs = 0;              // unrecorded runs before the timed ones
};

// A block under benchmark. The search ignores the header's nonce field;
// true_nonce (when the chain's solved nonce is known) feeds the
// time-to-nonce extrapolation.
struct BenchBlock {
    std::string id;
    BlockHeader header;
    std::optional<std::uint32_t> true_nonce;
};

struct RunRecord {
    std::string block_id;
    SearchStrategy strategy;
    std::uint64_t cap = 0;
    int run_index = 0;
    double elapsed_seconds = 0.0;
    std::uint64_t hashes_performed = 0;
    std::optional<std::uint32_t> found_nonce;
};

struct BlockSummary {
    std::string block_id;
    SearchStrategy strategy;
    int runs = 0;
    double mean_elapsed_seconds = 0.0;
    double iterations_per_second = 0.0;
    std::optional<double> time_to_nonce_seconds;
};

using BenchLogger = std::function<void(std::string_view)>;

// One timed run: the clock brackets run_search and nothing else.
RunRecord run_once(const BenchBlock& block, const SearchStrategy& strategy,
                   std::uint64_t cap, int run_index);

// Executes config.repeats timed runs (plus unrecorded warmups) for every
// (block, strategy) pair, block-major, strategies in declared order, repeats
// consecutive. Failed runs are logged and excluded; only a pair with zero
// surviving runs aborts the protocol.
std::vector<RunRecord> run_protocol(const std::vector<BenchBlock>& blocks,
                                    const BenchConfig& config,
                                    const BenchLogger& log = {});

// Per (block, strategy): mean elapsed over the pair's records,
// ips = mean hashes / mean elapsed, time_to_nonce = true_nonce / ips when
// the block's solved nonce is known. Pairs present for some blocks but
// missing for others are reported through `gaps`, never silently dropped.
std::vector<BlockSummary> summarize(
    const std::vector<RunRecord>& records,
    const std::map<std::string, std::uint32_t>& true_nonces = {},
    std::vector<std::string>* gaps = nullptr);

// CSV: block_id,strategy,particles,cap,run_index,elapsed_s,hashes,found_nonce
void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);

}  // namespace noncebench
