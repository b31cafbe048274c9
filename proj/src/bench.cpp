#include "noncebench/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "noncebench/errors.hpp"

namespace noncebench {

namespace {

void check_config(const BenchConfig& config) {
    if (config.cap == 0) throw InvalidArgument("cap must be at least 1");
    if (config.repeats < 1) throw InvalidArgument("repeats must be at least 1");
    if (config.warmup_runs < 0) throw InvalidArgument("warmup_runs must be non-negative");
    if (config.strategies.empty()) throw InvalidArgument("strategy list is empty");
}

std::string pair_key(const std::string& block_id, const SearchStrategy& s) {
    return block_id + "\x1f" + s.id();
}

std::uint64_t parse_u64_field(std::string_view text, const char* name, std::size_t line_no) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw MalformedInput("line " + std::to_string(line_no) + ": bad " + name +
                             " value '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

RunRecord run_once(const BenchBlock& block, const SearchStrategy& strategy,
                   std::uint64_t cap, int run_index) {
    const SearchBudget budget{cap, 0};

    const auto t0 = std::chrono::steady_clock::now();
    const SearchOutcome outcome = run_search(block.header, strategy, budget);
    const auto t1 = std::chrono::steady_clock::now();

    double elapsed = std::chrono::duration<double>(t1 - t0).count();
    // Clock granularity can round tiny runs to zero; keep elapsed positive.
    if (elapsed <= 0.0) elapsed = 1e-9;

    return RunRecord{block.id,  strategy,
                     cap,       run_index,
                     elapsed,   outcome.hashes_performed,
                     outcome.found_nonce};
}

std::vector<RunRecord> run_protocol(const std::vector<BenchBlock>& blocks,
                                    const BenchConfig& config,
                                    const BenchLogger& log) {
    check_config(config);
    if (blocks.empty()) throw InvalidArgument("no blocks to benchmark");

    std::vector<RunRecord> records;
    records.reserve(blocks.size() * config.strategies.size() *
                    static_cast<std::size_t>(config.repeats));

    for (const BenchBlock& block : blocks) {
        for (const SearchStrategy& strategy : config.strategies) {
            int survived = 0;
            for (int w = 0; w < config.warmup_runs; ++w) {
                try {
                    run_once(block, strategy, config.cap, -1);
                } catch (const std::exception& e) {
                    if (log) {
                        log("warmup failed: block=" + block.id + " strategy=" +
                            strategy.id() + ": " + e.what());
                    }
                }
            }
            for (int r = 0; r < config.repeats; ++r) {
                try {
                    records.push_back(run_once(block, strategy, config.cap, r));
                    ++survived;
                } catch (const std::exception& e) {
                    if (log) {
                        log("run failed: block=" + block.id + " strategy=" +
                            strategy.id() + " run=" + std::to_string(r) + ": " +
                            e.what());
                    }
                }
            }
            if (survived == 0) {
                throw Error("all runs failed for block=" + block.id +
                            " strategy=" + strategy.id());
            }
        }
    }
    return records;
}

std::vector<BlockSummary> summarize(
    const std::vector<RunRecord>& records,
    const std::map<std::string, std::uint32_t>& true_nonces,
    std::vector<std::string>* gaps) {
    struct Acc {
        SearchStrategy strategy;
        std::string block_id;
        int runs = 0;
        double elapsed_sum = 0.0;
        double hashes_sum = 0.0;
    };

    std::vector<std::string> order;
    std::map<std::string, Acc> by_pair;
    std::vector<std::string> block_order;
    std::vector<SearchStrategy> strategy_order;

    for (const RunRecord& rec : records) {
        const std::string key = pair_key(rec.block_id, rec.strategy);
        auto [it, inserted] = by_pair.try_emplace(key);
        if (inserted) {
            order.push_back(key);
            it->second.strategy = rec.strategy;
            it->second.block_id = rec.block_id;
            if (std::find(block_order.begin(), block_order.end(), rec.block_id) ==
                block_order.end()) {
                block_order.push_back(rec.block_id);
            }
            if (std::find(strategy_order.begin(), strategy_order.end(), rec.strategy) ==
                strategy_order.end()) {
                strategy_order.push_back(rec.strategy);
            }
        }
        it->second.runs += 1;
        it->second.elapsed_sum += rec.elapsed_seconds;
        it->second.hashes_sum += static_cast<double>(rec.hashes_performed);
    }

    if (gaps) {
        for (const std::string& block_id : block_order) {
            for (const SearchStrategy& s : strategy_order) {
                if (!by_pair.contains(pair_key(block_id, s))) {
                    gaps->push_back("block=" + block_id + " strategy=" + s.id() +
                                    ": no successful runs");
                }
            }
        }
    }

    std::vector<BlockSummary> out;
    out.reserve(order.size());
    for (const std::string& key : order) {
        const Acc& acc = by_pair.at(key);
        BlockSummary s;
        s.block_id = acc.block_id;
        s.strategy = acc.strategy;
        s.runs = acc.runs;
        s.mean_elapsed_seconds = acc.elapsed_sum / acc.runs;
        const double mean_hashes = acc.hashes_sum / acc.runs;
        s.iterations_per_second = mean_hashes / s.mean_elapsed_seconds;
        if (const auto it = true_nonces.find(acc.block_id); it != true_nonces.end()) {
            s.time_to_nonce_seconds = it->second / s.iterations_per_second;
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RunRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "block_id,strategy,particles,cap,run_index,elapsed_s,hashes,found_nonce\n";
    char elapsed[64];
    for (const RunRecord& rec : records) {
        std::snprintf(elapsed, sizeof(elapsed), "%.17g", rec.elapsed_seconds);
        out << rec.block_id << ',' << rec.strategy.kind_name() << ','
            << rec.strategy.particles << ',' << rec.cap << ',' << rec.run_index << ','
            << elapsed << ',' << rec.hashes_performed << ',';
        if (rec.found_nonce) out << *rec.found_nonce;
        out << '\n';
    }
    if (!out) throw IoError("write failed on " + path.string());
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw MalformedInput("empty CSV: " + path.string());
    if (line != "block_id,strategy,particles,cap,run_index,elapsed_s,hashes,found_nonce") {
        throw MalformedInput("unexpected CSV header: " + line);
    }

    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (fields.size() != 8) {
            throw MalformedInput("line " + std::to_string(line_no) + ": expected 8 fields, got " +
                                 std::to_string(fields.size()));
        }

        RunRecord rec;
        rec.block_id = fields[0];
        const std::uint32_t particles = static_cast<std::uint32_t>(
            parse_u64_field(fields[2], "particles", line_no));
        if (fields[1] == "bf") {
            rec.strategy = SearchStrategy::brute_force();
        } else if (fields[1] == "ifl") {
            if (particles == 0) {
                throw MalformedInput("line " + std::to_string(line_no) + ": ifl with particles 0");
            }
            rec.strategy = SearchStrategy::inner_for_loop(particles);
        } else {
            throw MalformedInput("line " + std::to_string(line_no) + ": unknown strategy '" +
                                 fields[1] + "'");
        }
        rec.cap = parse_u64_field(fields[3], "cap", line_no);
        rec.run_index = static_cast<int>(parse_u64_field(fields[4], "run_index", line_no));
        try {
            rec.elapsed_seconds = std::stod(fields[5]);
        } catch (const std::exception&) {
            throw MalformedInput("line " + std::to_string(line_no) + ": bad elapsed_s value '" +
                                 fields[5] + "'");
        }
        if (rec.elapsed_seconds <= 0.0) {
            throw MalformedInput("line " + std::to_string(line_no) + ": elapsed_s must be positive");
        }
        rec.hashes_performed = parse_u64_field(fields[6], "hashes", line_no);
        if (!fields[7].empty()) {
            rec.found_nonce = static_cast<std::uint32_t>(
                parse_u64_field(fields[7], "found_nonce", line_no));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace noncebench
