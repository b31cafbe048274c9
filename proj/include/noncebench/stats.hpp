#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noncebench/bench.hpp"
#include "noncebench/search.hpp"

namespace noncebench {

struct StrategyAggregate {
    SearchStrategy strategy;
    int blocks = 0;                // blocks contributing to the mean
    double mean_ips = 0.0;         // mean over blocks of per-block ips
    double ratio_to_bf = 0.0;      // exactly 1.0 for brute force itself
    double win_rate_vs_bf = 0.0;   // strict >; ties are neither win nor loss
    double tie_rate_vs_bf = 0.0;
    double loss_rate_vs_bf = 0.0;
};

enum class TTestVariant { Pooled, Welch };

struct TTestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double critical_value = 0.0;
    bool reject_null = false;
    double alpha = 0.01;
    TTestVariant variant = TTestVariant::Pooled;
};

// Two-sided Student-t critical value for alpha in {0.05, 0.01}, from a
// built-in table: integer df rows up to 120 (bucketed downward between
// rows), asymptotic normal values beyond.
double t_critical_value(double df, double alpha);

// Unpaired two-sample t-test. Pooled: common-variance estimate,
// df = n_a + n_b - 2. Welch: per-sample variances, Welch-Satterthwaite df.
// Requires at least 2 values per sample. Zero variance in both samples:
// equal means give t = 0, unequal means give infinite-magnitude t with
// reject_null = true.
TTestResult two_sample_t(std::span<const double> a, std::span<const double> b,
                         TTestVariant variant = TTestVariant::Pooled,
                         double alpha = 0.01);

// Collapses per-block summaries into one row per strategy: mean ips over
// blocks, ratio to the brute-force mean, and win/tie/loss rates against
// brute force on the same block. Brute-force summaries must be present.
std::vector<StrategyAggregate> aggregate(const std::vector<BlockSummary>& summaries);

struct StrategyTTest {
    SearchStrategy strategy;   // compared against brute force
    TTestResult result;        // positive t = strategy faster
};

// Per non-BF strategy: two_sample_t(strategy per-block ips, BF per-block ips)
// over blocks both have. Samples need at least 2 blocks each.
std::vector<StrategyTTest> ttests_vs_bf(const std::vector<BlockSummary>& summaries,
                                        TTestVariant variant = TTestVariant::Pooled,
                                        double alpha = 0.01);

struct ReportMetadata {
    std::uint64_t cap = 0;
    int repeats = 0;
    std::vector<SearchStrategy> strategies;
    std::vector<std::string> block_ids;
    std::optional<std::uint64_t> seed;   // height-sampling seed, when one was used
    std::string clock_id = "std::chrono::steady_clock";
    std::string ordering =
        "block-major; strategies in declared order; repeats consecutive";
    std::string ttest_sample = "per-block-ips";
    std::string host = "unspecified";
};

// Writes <dir>/report.csv (strategy,particles,mean_ips,ratio_to_bf,
// win_rate_vs_bf), <dir>/report.txt (plain-text table), and
// <dir>/report.json (aggregates + t-tests + full metadata).
void emit_report(const std::filesystem::path& dir,
                 const std::vector<StrategyAggregate>& aggregates,
                 const std::vector<StrategyTTest>& ttests,
                 const ReportMetadata& metadata);

std::string render_text_table(const std::vector<StrategyAggregate>& aggregates,
                              const std::vector<StrategyTTest>& ttests);

}  // namespace noncebench
