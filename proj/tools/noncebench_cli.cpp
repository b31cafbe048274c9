#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noncebench/bench.hpp"
#include "noncebench/errors.hpp"
#include "noncebench/fetch.hpp"
#include "noncebench/ingest.hpp"
#include "noncebench/pow.hpp"
#include "noncebench/search.hpp"
#include "noncebench/stats.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNetwork = 4;

using noncebench::BenchBlock;
using noncebench::BlockFixture;
using noncebench::BlockHeader;

BlockHeader header_from_hex80(const std::string& hex) {
    const std::vector<std::uint8_t> bytes = noncebench::from_hex(hex);
    return noncebench::parse_header(bytes);
}

// --fixture source: picks by --height when given, else the sole entry.
BlockFixture pick_fixture(const std::string& path, std::optional<std::uint64_t> height) {
    const std::vector<BlockFixture> fixtures = noncebench::load_fixtures(path);
    if (fixtures.empty()) {
        throw noncebench::MalformedInput(path + ": no fixtures");
    }
    if (!height) {
        if (fixtures.size() > 1) {
            throw noncebench::InvalidArgument(
                path + " holds " + std::to_string(fixtures.size()) +
                " fixtures; pick one with --height");
        }
        return fixtures.front();
    }
    for (const BlockFixture& f : fixtures) {
        if (f.height == *height) return f;
    }
    throw noncebench::InvalidArgument("height " + std::to_string(*height) +
                                      " not in " + path);
}

std::vector<BenchBlock> to_bench_blocks(const std::vector<BlockFixture>& fixtures) {
    std::vector<BenchBlock> blocks;
    blocks.reserve(fixtures.size());
    for (const BlockFixture& f : fixtures) {
        blocks.push_back({f.id(), f.header(), f.nonce});
    }
    return blocks;
}

int cmd_mine(const std::string& fixture_path, std::optional<std::uint64_t> height,
             const std::string& header_hex, const std::string& strategy_name,
             std::optional<std::uint32_t> particles, std::uint64_t max_hashes,
             std::uint32_t start_nonce) {
    noncebench::SearchStrategy strategy;
    if (strategy_name == "bf") {
        if (particles) {
            std::cerr << "error: --particles only applies to ifl\n";
            return kExitUsage;
        }
        strategy = noncebench::SearchStrategy::brute_force();
    } else if (strategy_name == "ifl") {
        if (!particles || *particles == 0) {
            std::cerr << "error: ifl needs --particles P with P >= 1\n";
            return kExitUsage;
        }
        strategy = noncebench::SearchStrategy::inner_for_loop(*particles);
    } else {
        std::cerr << "error: unknown strategy '" << strategy_name << "' (bf or ifl)\n";
        return kExitUsage;
    }

    BlockHeader header;
    if (!header_hex.empty()) {
        try {
            header = header_from_hex80(header_hex);
        } catch (const noncebench::MalformedInput& e) {
            std::cerr << "error: bad --header: " << e.what() << "\n";
            return kExitUsage;
        }
    } else {
        header = pick_fixture(fixture_path, height).header();
    }

    const noncebench::SearchBudget budget{max_hashes, start_nonce};
    const noncebench::SearchOutcome outcome =
        noncebench::run_search(header, strategy, budget);

    if (outcome.found_nonce) {
        header.nonce = *outcome.found_nonce;
        const auto digest = noncebench::double_sha256(noncebench::serialize_header(header));
        std::cout << "nonce=" << *outcome.found_nonce
                  << " hash=" << noncebench::display_hex(digest)
                  << " hashes=" << outcome.hashes_performed << "\n";
        return kExitFound;
    }
    std::cout << (outcome.exhausted ? "exhausted" : "budget reached")
              << " hashes=" << outcome.hashes_performed << "\n";
    return kExitNotFound;
}

int cmd_verify(const std::string& header_hex) {
    BlockHeader header;
    try {
        header = header_from_hex80(header_hex);
    } catch (const noncebench::MalformedInput& e) {
        std::cerr << "error: bad --header: " << e.what() << "\n";
        return kExitUsage;
    }
    const noncebench::VerificationResult v = noncebench::verify_block(header);
    if (v.sign_bit_warning) {
        std::cerr << "warning: nbits sign bit set; decoded as magnitude\n";
    }
    std::cout << "meets=" << (v.valid ? "true" : "false") << " hash=" << v.hash_display
              << " target=" << v.target_hex << "\n";
    return v.valid ? kExitFound : kExitNotFound;
}

int cmd_target(std::uint64_t nbits) {
    if (nbits > 0xFFFFFFFFull) {
        std::cerr << "error: --nbits must fit in 32 bits\n";
        return kExitUsage;
    }
    bool sign_warning = false;
    const noncebench::Target256 target =
        noncebench::decode_nbits(static_cast<std::uint32_t>(nbits), &sign_warning);
    if (sign_warning) {
        std::cerr << "warning: nbits sign bit set; decoded as magnitude\n";
    }
    std::cout << "hex=" << target.hex() << " decimal=" << target.decimal() << "\n";
    return kExitFound;
}

int cmd_sample(std::uint64_t seed, std::uint64_t count, std::uint64_t max_height) {
    const std::vector<std::uint64_t> heights =
        noncebench::sample_heights({seed, count, max_height});
    for (std::uint64_t h : heights) std::cout << h << "\n";
    return kExitFound;
}

int cmd_fetch(std::uint64_t height, const std::string& endpoint) {
    noncebench::FetchOptions opts;
    opts.endpoint = endpoint.empty() ? noncebench::default_endpoint() : endpoint;
    const BlockFixture fixture = noncebench::fetch_header(height, opts);
    std::cout << fixture.to_json_line() << "\n";
    return kExitFound;
}

int cmd_bench(const std::string& fixtures_path, std::uint64_t cap, int repeats,
              const std::string& strategies_spec, const std::string& out_dir,
              int warmup, std::optional<std::uint64_t> seed, const std::string& host) {
    const std::vector<BlockFixture> fixtures = noncebench::load_fixtures(fixtures_path);
    if (fixtures.empty()) {
        std::cerr << "error: " << fixtures_path << " holds no fixtures\n";
        return kExitIo;
    }

    noncebench::BenchConfig config;
    config.cap = cap;
    config.repeats = repeats;
    config.warmup_runs = warmup;
    config.strategies = noncebench::parse_strategy_list(strategies_spec);

    const bool has_bf =
        std::any_of(config.strategies.begin(), config.strategies.end(),
                    [](const auto& s) { return s.kind == noncebench::StrategyKind::BruteForce; });
    if (!has_bf) {
        std::cerr << "error: --strategies must include bf (the ratio baseline)\n";
        return kExitUsage;
    }

    const std::vector<BenchBlock> blocks = to_bench_blocks(fixtures);
    const auto log = [](std::string_view msg) { std::cerr << msg << "\n"; };
    const std::vector<noncebench::RunRecord> records =
        noncebench::run_protocol(blocks, config, log);

    std::map<std::string, std::uint32_t> true_nonces;
    for (const BlockFixture& f : fixtures) {
        if (f.nonce) true_nonces[f.id()] = *f.nonce;
    }
    std::vector<std::string> gaps;
    const std::vector<noncebench::BlockSummary> summaries =
        noncebench::summarize(records, true_nonces, &gaps);
    for (const std::string& gap : gaps) std::cerr << "gap: " << gap << "\n";

    const auto aggregates = noncebench::aggregate(summaries);
    const auto ttests = noncebench::ttests_vs_bf(summaries);

    noncebench::ReportMetadata metadata;
    metadata.cap = cap;
    metadata.repeats = repeats;
    metadata.strategies = config.strategies;
    for (const BenchBlock& b : blocks) metadata.block_ids.push_back(b.id);
    metadata.seed = seed;
    metadata.host = host;

    std::filesystem::create_directories(out_dir);
    noncebench::write_records_csv(std::filesystem::path(out_dir) / "runs.csv", records);
    noncebench::emit_report(out_dir, aggregates, ttests, metadata);

    std::cout << noncebench::render_text_table(aggregates, ttests);
    std::cout << "wrote " << records.size() << " records to " << out_dir << "/runs.csv\n";
    return kExitFound;
}

int cmd_report(const std::string& runs_path, const std::string& out_dir,
               const std::string& host) {
    const std::vector<noncebench::RunRecord> records =
        noncebench::read_records_csv(runs_path);
    if (records.empty()) {
        std::cerr << "error: " << runs_path << " holds no records\n";
        return kExitIo;
    }

    std::vector<std::string> gaps;
    const auto summaries = noncebench::summarize(records, {}, &gaps);
    for (const std::string& gap : gaps) std::cerr << "gap: " << gap << "\n";
    const auto aggregates = noncebench::aggregate(summaries);
    const auto ttests = noncebench::ttests_vs_bf(summaries);

    noncebench::ReportMetadata metadata;
    metadata.cap = records.front().cap;
    std::map<std::string, int> runs_per_pair;
    for (const auto& rec : records) {
        runs_per_pair[rec.block_id + "\x1f" + rec.strategy.id()] += 1;
    }
    int max_runs = 0;
    for (const auto& [key, n] : runs_per_pair) max_runs = std::max(max_runs, n);
    metadata.repeats = max_runs;
    for (const auto& rec : records) {
        if (std::find(metadata.strategies.begin(), metadata.strategies.end(),
                      rec.strategy) == metadata.strategies.end()) {
            metadata.strategies.push_back(rec.strategy);
        }
        if (std::find(metadata.block_ids.begin(), metadata.block_ids.end(),
                      rec.block_id) == metadata.block_ids.end()) {
            metadata.block_ids.push_back(rec.block_id);
        }
    }
    metadata.host = host;

    noncebench::emit_report(out_dir, aggregates, ttests, metadata);
    std::cout << noncebench::render_text_table(aggregates, ttests);
    return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonce-search benchmark toolkit"};
    app.require_subcommand(1);

    // mine
    auto* mine = app.add_subcommand("mine", "search for a valid nonce");
    std::string mine_fixture, mine_header, mine_strategy = "bf";
    std::optional<std::uint64_t> mine_height;
    std::optional<std::uint32_t> mine_particles;
    std::uint64_t mine_max_hashes = 30'000'000;
    std::uint32_t mine_start = 0;
    auto* mine_fix_opt = mine->add_option("--fixture", mine_fixture, "fixture file (.jsonl)");
    auto* mine_hdr_opt = mine->add_option("--header", mine_header, "80-byte header hex");
    mine->add_option("--height", mine_height, "height to pick from --fixture");
    mine->add_option("--strategy", mine_strategy, "bf or ifl")->capture_default_str();
    mine->add_option("--particles", mine_particles, "inner-loop batch size (ifl)");
    mine->add_option("--max-hashes", mine_max_hashes, "hash budget")->capture_default_str();
    mine->add_option("--start-nonce", mine_start, "first nonce to test")->capture_default_str();
    mine_fix_opt->excludes(mine_hdr_opt);

    // verify
    auto* verify = app.add_subcommand("verify", "recompute a header's hash and check its target");
    std::string verify_header;
    verify->add_option("--header", verify_header, "80-byte header hex")->required();

    // target
    auto* target = app.add_subcommand("target", "expand compact bits to a 256-bit target");
    std::uint64_t target_nbits = 0;
    target->add_option("--nbits", target_nbits, "compact bits (decimal or 0x hex)")->required();

    // sample
    auto* sample = app.add_subcommand("sample", "deterministic height sample");
    std::uint64_t sample_seed = 0, sample_count = 0, sample_max = 557132;
    sample->add_option("--seed", sample_seed, "PRNG seed")->required();
    sample->add_option("--count", sample_count, "heights to draw")->required();
    sample->add_option("--max-height", sample_max, "range upper bound")->capture_default_str();

    // fetch
    auto* fetch = app.add_subcommand("fetch", "fetch a header from a block explorer");
    std::uint64_t fetch_height = 0;
    std::string fetch_endpoint;
    fetch->add_option("--height", fetch_height, "block height")->required();
    fetch->add_option("--endpoint", fetch_endpoint, "base URL (default $NONCEBENCH_API)");

    // bench
    auto* bench = app.add_subcommand("bench", "run the timed protocol over fixtures");
    std::string bench_fixtures, bench_out = "bench-out", bench_host = "unspecified";
    std::string bench_strategies = "bf,ifl:2,ifl:6,ifl:20,ifl:100,ifl:200,ifl:1000";
    std::uint64_t bench_cap = 30'000'000;
    int bench_repeats = 2, bench_warmup = 0;
    std::optional<std::uint64_t> bench_seed;
    bench->add_option("--fixtures", bench_fixtures, "fixture file (.jsonl)")->required();
    bench->add_option("--cap", bench_cap, "hash attempts per run")->capture_default_str();
    bench->add_option("--repeats", bench_repeats, "runs per (block, strategy)")
        ->capture_default_str();
    bench->add_option("--strategies", bench_strategies, "comma list: bf, ifl:P")
        ->capture_default_str();
    bench->add_option("--out", bench_out, "output directory")->capture_default_str();
    bench->add_option("--warmup", bench_warmup, "unrecorded runs per pair")
        ->capture_default_str();
    bench->add_option("--seed", bench_seed, "height-sample seed to record in metadata");
    bench->add_option("--host", bench_host, "free-text host description for metadata");

    // report
    auto* report = app.add_subcommand("report", "re-aggregate a runs.csv");
    std::string report_runs, report_out = "bench-out", report_host = "unspecified";
    report->add_option("--runs", report_runs, "runs.csv from bench")->required();
    report->add_option("--out", report_out, "output directory")->capture_default_str();
    report->add_option("--host", report_host, "free-text host description for metadata");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (mine->parsed()) {
            if (mine_fixture.empty() && mine_header.empty()) {
                std::cerr << "error: mine needs --fixture or --header\n";
                return kExitUsage;
            }
            return cmd_mine(mine_fixture, mine_height, mine_header, mine_strategy,
                            mine_particles, mine_max_hashes, mine_start);
        }
        if (verify->parsed()) return cmd_verify(verify_header);
        if (target->parsed()) return cmd_target(target_nbits);
        if (sample->parsed()) return cmd_sample(sample_seed, sample_count, sample_max);
        if (fetch->parsed()) return cmd_fetch(fetch_height, fetch_endpoint);
        if (bench->parsed())
            return cmd_bench(bench_fixtures, bench_cap, bench_repeats, bench_strategies,
                             bench_out, bench_warmup, bench_seed, bench_host);
        if (report->parsed()) return cmd_report(report_runs, report_out, report_host);
    } catch (const noncebench::HttpStatusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNetwork;
    } catch (const noncebench::NetworkError& e) {
        std::cerr << "error: " << e.what() << (e.retryable() ? " (retryable)" : "") << "\n";
        return kExitNetwork;
    } catch (const noncebench::SchemaMismatch& e) {
        std::cerr << "error: schema mismatch: " << e.what() << "\n";
        return kExitNotFound;
    } catch (const noncebench::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const noncebench::MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const noncebench::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const noncebench::TargetOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotFound;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotFound;
    }
    return kExitUsage;
}
