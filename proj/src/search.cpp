#include "noncebench/search.hpp"

#include <algorithm>
#include <charconv>

#include "noncebench/errors.hpp"
#include "noncebench/pow.hpp"

namespace noncebench {

namespace {

constexpr std::uint64_t kNonceSpace = std::uint64_t{1} << 32;

// Prepared header buffer: everything except the trailing 4 nonce bytes is
// fixed for the whole search. Both strategies share this assembly policy so
// per-attempt work is identical and timing comparisons stay fair.
struct MiningContext {
    HeaderBytes buf;
    Target256 target;

    MiningContext(const BlockHeader& h)
        : buf(serialize_header(h)), target(decode_nbits(h.nbits)) {}

    bool attempt(std::uint32_t nonce) {
        write_le32(buf.data() + 76, nonce);
        return meets_target(double_sha256(buf), target);
    }
};

void check_budget(const SearchBudget& budget) {
    if (budget.max_hashes == 0) {
        throw InvalidArgument("max_hashes must be at least 1");
    }
}

}  // namespace

std::string SearchStrategy::id() const {
    if (kind == StrategyKind::BruteForce) return "bf";
    return "ifl:" + std::to_string(particles);
}

std::string SearchStrategy::kind_name() const {
    return kind == StrategyKind::BruteForce ? "bf" : "ifl";
}

SearchStrategy parse_strategy(std::string_view text) {
    if (text == "bf") return SearchStrategy::brute_force();
    constexpr std::string_view prefix = "ifl:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string_view num = text.substr(prefix.size());
        std::uint32_t particles = 0;
        const auto [ptr, ec] =
            std::from_chars(num.data(), num.data() + num.size(), particles);
        if (ec == std::errc{} && ptr == num.data() + num.size() && particles >= 1) {
            return SearchStrategy::inner_for_loop(particles);
        }
    }
    throw InvalidArgument("bad strategy spec '" + std::string(text) +
                          "': expected 'bf' or 'ifl:P' with P >= 1");
}

std::vector<SearchStrategy> parse_strategy_list(std::string_view text) {
    if (text.empty()) {
        throw InvalidArgument("empty strategy list");
    }
    std::vector<SearchStrategy> out;
    for (;;) {
        // An empty segment (leading, trailing, or doubled comma) fails in
        // parse_strategy rather than being skipped.
        const std::size_t comma = text.find(',');
        out.push_back(parse_strategy(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

SearchOutcome brute_force_search(const BlockHeader& h, const SearchBudget& budget) {
    check_budget(budget);
    MiningContext ctx(h);
    const std::uint64_t space = kNonceSpace - budget.start_nonce;
    const std::uint64_t allowed = std::min(budget.max_hashes, space);

    SearchOutcome out;
    for (std::uint64_t k = 0; k < allowed; ++k) {
        const auto nonce = static_cast<std::uint32_t>(budget.start_nonce + k);
        if (ctx.attempt(nonce)) {
            out.found_nonce = nonce;
            out.hashes_performed = k + 1;
            return out;
        }
    }
    out.hashes_performed = allowed;
    out.exhausted = (allowed == space);
    return out;
}

SearchOutcome ifl_search(const BlockHeader& h, std::uint32_t particles,
                         const SearchBudget& budget) {
    if (particles == 0) {
        throw InvalidArgument("particles must be at least 1");
    }
    check_budget(budget);
    MiningContext ctx(h);
    const std::uint64_t space = kNonceSpace - budget.start_nonce;
    const std::uint64_t allowed = std::min(budget.max_hashes, space);

    SearchOutcome out;
    std::uint64_t performed = 0;
    while (performed < allowed) {
        const std::uint64_t batch = std::min<std::uint64_t>(particles, allowed - performed);
        for (std::uint64_t j = 0; j < batch; ++j) {
            const auto nonce = static_cast<std::uint32_t>(budget.start_nonce + performed);
            ++performed;
            if (ctx.attempt(nonce)) {
                out.found_nonce = nonce;
                out.hashes_performed = performed;
                return out;
            }
        }
    }
    out.hashes_performed = performed;
    out.exhausted = (performed == space);
    return out;
}

SearchOutcome run_search(const BlockHeader& h, const SearchStrategy& strategy,
                         const SearchBudget& budget) {
    if (strategy.kind == StrategyKind::BruteForce) {
        return brute_force_search(h, budget);
    }
    return ifl_search(h, strategy.particles, budget);
}

}  // namespace noncebench
