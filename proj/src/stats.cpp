#include "noncebench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "noncebench/errors.hpp"

namespace noncebench {

namespace {

struct TableRow {
    int df;
    double p05;
    double p01;
};

// Two-sided Student-t critical values.
constexpr TableRow kTTable[] = {
    {1, 12.706, 63.657}, {2, 4.303, 9.925},  {3, 3.182, 5.841},  {4, 2.776, 4.604},
    {5, 2.571, 4.032},   {6, 2.447, 3.707},  {7, 2.365, 3.499},  {8, 2.306, 3.355},
    {9, 2.262, 3.250},   {10, 2.228, 3.169}, {11, 2.201, 3.106}, {12, 2.179, 3.055},
    {13, 2.160, 3.012},  {14, 2.145, 2.977}, {15, 2.131, 2.947}, {16, 2.120, 2.921},
    {17, 2.110, 2.898},  {18, 2.101, 2.878}, {19, 2.093, 2.861}, {20, 2.086, 2.845},
    {21, 2.080, 2.831},  {22, 2.074, 2.819}, {23, 2.069, 2.807}, {24, 2.064, 2.797},
    {25, 2.060, 2.787},  {26, 2.056, 2.779}, {27, 2.052, 2.771}, {28, 2.048, 2.763},
    {29, 2.045, 2.756},  {30, 2.042, 2.750}, {40, 2.021, 2.704}, {60, 2.000, 2.660},
    {80, 1.990, 2.639},  {100, 1.984, 2.626}, {120, 1.980, 2.617},
};
constexpr double kAsymptotic05 = 1.960;
constexpr double kAsymptotic01 = 2.576;

struct Moments {
    double mean;
    double variance;  // sample variance, n-1 denominator
    std::size_t n;
};

Moments moments(std::span<const double> xs) {
    const std::size_t n = xs.size();
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return {mean, ss / (n - 1), n};
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

double t_critical_value(double df, double alpha) {
    const bool a05 = std::abs(alpha - 0.05) < 1e-12;
    const bool a01 = std::abs(alpha - 0.01) < 1e-12;
    if (!a05 && !a01) {
        throw InvalidArgument("alpha must be 0.05 or 0.01");
    }
    if (!(df > 0) || std::isnan(df)) {
        throw InvalidArgument("degrees of freedom must be positive");
    }
    if (df > 120.0) {
        return a05 ? kAsymptotic05 : kAsymptotic01;
    }
    // Bucket downward: the largest table row whose df does not exceed the
    // given df; fractional df below 1 clamps to the df=1 row.
    const TableRow* chosen = &kTTable[0];
    for (const TableRow& row : kTTable) {
        if (row.df <= df) chosen = &row;
    }
    return a05 ? chosen->p05 : chosen->p01;
}

TTestResult two_sample_t(std::span<const double> a, std::span<const double> b,
                         TTestVariant variant, double alpha) {
    if (a.size() < 2 || b.size() < 2) {
        throw InvalidArgument("each sample needs at least 2 values");
    }
    const Moments ma = moments(a);
    const Moments mb = moments(b);
    const double na = static_cast<double>(ma.n);
    const double nb = static_cast<double>(mb.n);

    TTestResult result;
    result.alpha = alpha;
    result.variant = variant;

    double se = 0.0;
    if (variant == TTestVariant::Pooled) {
        const double sp2 =
            ((na - 1) * ma.variance + (nb - 1) * mb.variance) / (na + nb - 2);
        se = std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
        result.degrees_of_freedom = na + nb - 2;
    } else {
        const double va_n = ma.variance / na;
        const double vb_n = mb.variance / nb;
        se = std::sqrt(va_n + vb_n);
        if (va_n + vb_n > 0.0) {
            result.degrees_of_freedom =
                (va_n + vb_n) * (va_n + vb_n) /
                (va_n * va_n / (na - 1) + vb_n * vb_n / (nb - 1));
        } else {
            result.degrees_of_freedom = na + nb - 2;
        }
    }

    const double diff = ma.mean - mb.mean;
    if (se == 0.0) {
        if (diff == 0.0) {
            result.t_statistic = 0.0;
        } else {
            result.t_statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                                          : -std::numeric_limits<double>::infinity();
        }
    } else {
        result.t_statistic = diff / se;
    }

    result.critical_value = t_critical_value(result.degrees_of_freedom, alpha);
    result.reject_null = std::abs(result.t_statistic) > result.critical_value;
    return result;
}

std::vector<StrategyAggregate> aggregate(const std::vector<BlockSummary>& summaries) {
    // (block, strategy) → ips, strategies in first-seen order.
    std::vector<SearchStrategy> strategy_order;
    std::map<std::string, std::map<std::string, double>> ips_by_strategy;  // id → block → ips
    for (const BlockSummary& s : summaries) {
        if (std::find(strategy_order.begin(), strategy_order.end(), s.strategy) ==
            strategy_order.end()) {
            strategy_order.push_back(s.strategy);
        }
        ips_by_strategy[s.strategy.id()][s.block_id] = s.iterations_per_second;
    }

    const std::string bf_id = SearchStrategy::brute_force().id();
    const auto bf_it = ips_by_strategy.find(bf_id);
    if (bf_it == ips_by_strategy.end()) {
        throw InvalidArgument("brute-force baseline missing: ratios need bf summaries");
    }
    const std::map<std::string, double>& bf_ips = bf_it->second;

    double bf_mean = 0.0;
    for (const auto& [block, ips] : bf_ips) bf_mean += ips;
    bf_mean /= static_cast<double>(bf_ips.size());

    std::vector<StrategyAggregate> out;
    out.reserve(strategy_order.size());
    for (const SearchStrategy& strategy : strategy_order) {
        const std::map<std::string, double>& ips = ips_by_strategy.at(strategy.id());
        StrategyAggregate agg;
        agg.strategy = strategy;
        agg.blocks = static_cast<int>(ips.size());

        double sum = 0.0;
        for (const auto& [block, v] : ips) sum += v;
        agg.mean_ips = sum / static_cast<double>(ips.size());

        if (strategy.kind == StrategyKind::BruteForce) {
            agg.ratio_to_bf = 1.0;  // by definition, not re-derived
        } else {
            agg.ratio_to_bf = agg.mean_ips / bf_mean;
        }

        int wins = 0, ties = 0, losses = 0, compared = 0;
        for (const auto& [block, v] : ips) {
            const auto bf_block = bf_ips.find(block);
            if (bf_block == bf_ips.end()) continue;
            ++compared;
            if (v > bf_block->second) ++wins;
            else if (v < bf_block->second) ++losses;
            else ++ties;
        }
        if (compared > 0) {
            agg.win_rate_vs_bf = static_cast<double>(wins) / compared;
            agg.tie_rate_vs_bf = static_cast<double>(ties) / compared;
            agg.loss_rate_vs_bf = static_cast<double>(losses) / compared;
        }
        out.push_back(agg);
    }
    return out;
}

std::vector<StrategyTTest> ttests_vs_bf(const std::vector<BlockSummary>& summaries,
                                        TTestVariant variant, double alpha) {
    std::vector<SearchStrategy> strategy_order;
    std::map<std::string, std::map<std::string, double>> ips_by_strategy;
    for (const BlockSummary& s : summaries) {
        if (std::find(strategy_order.begin(), strategy_order.end(), s.strategy) ==
            strategy_order.end()) {
            strategy_order.push_back(s.strategy);
        }
        ips_by_strategy[s.strategy.id()][s.block_id] = s.iterations_per_second;
    }

    const std::string bf_id = SearchStrategy::brute_force().id();
    const auto bf_it = ips_by_strategy.find(bf_id);
    if (bf_it == ips_by_strategy.end()) {
        throw InvalidArgument("brute-force baseline missing: t-tests need bf summaries");
    }

    std::vector<StrategyTTest> out;
    for (const SearchStrategy& strategy : strategy_order) {
        if (strategy.kind == StrategyKind::BruteForce) continue;
        std::vector<double> xs, bf;
        for (const auto& [block, v] : ips_by_strategy.at(strategy.id())) {
            const auto it = bf_it->second.find(block);
            if (it == bf_it->second.end()) continue;
            xs.push_back(v);
            bf.push_back(it->second);
        }
        if (xs.size() < 2) continue;  // not enough paired blocks to test
        out.push_back({strategy, two_sample_t(xs, bf, variant, alpha)});
    }
    return out;
}

std::string render_text_table(const std::vector<StrategyAggregate>& aggregates,
                              const std::vector<StrategyTTest>& ttests) {
    std::ostringstream out;
    out << "strategy     particles    mean_ips   ratio_to_bf   win_rate_vs_bf\n";
    out << "--------------------------------------------------------------------\n";
    for (const StrategyAggregate& agg : aggregates) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-12s %9u %11.0f %13.4f %16.4f\n",
                      agg.strategy.id().c_str(), agg.strategy.particles, agg.mean_ips,
                      agg.ratio_to_bf, agg.win_rate_vs_bf);
        out << line;
    }
    if (!ttests.empty()) {
        out << "\nt-tests vs bf (positive t = faster than bf):\n";
        for (const StrategyTTest& t : ttests) {
            char line[200];
            std::snprintf(line, sizeof(line),
                          "%-12s t=%+.4f df=%.1f critical=%.3f alpha=%.2f reject_null=%s\n",
                          t.strategy.id().c_str(), t.result.t_statistic,
                          t.result.degrees_of_freedom, t.result.critical_value,
                          t.result.alpha, t.result.reject_null ? "true" : "false");
            out << line;
        }
    }
    return out.str();
}

void emit_report(const std::filesystem::path& dir,
                 const std::vector<StrategyAggregate>& aggregates,
                 const std::vector<StrategyTTest>& ttests,
                 const ReportMetadata& metadata) {
    if (aggregates.empty()) throw InvalidArgument("nothing to report");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    {
        std::ofstream csv(dir / "report.csv");
        if (!csv) throw IoError("cannot open " + (dir / "report.csv").string());
        csv << "strategy,particles,mean_ips,ratio_to_bf,win_rate_vs_bf\n";
        for (const StrategyAggregate& agg : aggregates) {
            csv << agg.strategy.kind_name() << ',' << agg.strategy.particles << ','
                << fmt("%.17g", agg.mean_ips) << ',' << fmt("%.4f", agg.ratio_to_bf)
                << ',' << fmt("%.4f", agg.win_rate_vs_bf) << '\n';
        }
        if (!csv) throw IoError("write failed on report.csv");
    }

    {
        std::ofstream txt(dir / "report.txt");
        if (!txt) throw IoError("cannot open " + (dir / "report.txt").string());
        txt << render_text_table(aggregates, ttests);
        if (!txt) throw IoError("write failed on report.txt");
    }

    {
        nlohmann::json j;
        nlohmann::json strategies = nlohmann::json::array();
        for (const SearchStrategy& s : metadata.strategies) strategies.push_back(s.id());
        j["config"] = {
            {"cap", metadata.cap},
            {"repeats", metadata.repeats},
            {"strategies", strategies},
            {"block_ids", metadata.block_ids},
            {"seed", metadata.seed ? nlohmann::json(*metadata.seed) : nlohmann::json()},
            {"clock", metadata.clock_id},
            {"ordering", metadata.ordering},
            {"ttest_sample", metadata.ttest_sample},
            {"host", metadata.host},
        };
        j["aggregates"] = nlohmann::json::array();
        for (const StrategyAggregate& agg : aggregates) {
            j["aggregates"].push_back({
                {"strategy", agg.strategy.id()},
                {"particles", agg.strategy.particles},
                {"blocks", agg.blocks},
                {"mean_ips", agg.mean_ips},
                {"ratio_to_bf", agg.ratio_to_bf},
                {"win_rate_vs_bf", agg.win_rate_vs_bf},
                {"tie_rate_vs_bf", agg.tie_rate_vs_bf},
                {"loss_rate_vs_bf", agg.loss_rate_vs_bf},
            });
        }
        j["ttests_vs_bf"] = nlohmann::json::array();
        for (const StrategyTTest& t : ttests) {
            j["ttests_vs_bf"].push_back({
                {"strategy", t.strategy.id()},
                {"variant", t.result.variant == TTestVariant::Pooled ? "pooled" : "welch"},
                {"t", std::isfinite(t.result.t_statistic)
                          ? nlohmann::json(t.result.t_statistic)
                          : nlohmann::json(t.result.t_statistic > 0 ? "inf" : "-inf")},
                {"df", t.result.degrees_of_freedom},
                {"critical_value", t.result.critical_value},
                {"alpha", t.result.alpha},
                {"reject_null", t.result.reject_null},
            });
        }
        std::ofstream js(dir / "report.json");
        if (!js) throw IoError("cannot open " + (dir / "report.json").string());
        js << j.dump(2) << '\n';
        if (!js) throw IoError("write failed on report.json");
    }
}

}  // namespace noncebench
