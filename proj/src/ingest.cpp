#include "noncebench/ingest.hpp"

#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "noncebench/errors.hpp"
#include "noncebench/pow.hpp"

namespace noncebench {

namespace {

std::uint32_t require_u32(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw MalformedInput(std::string("missing field: ") + key);
    }
    const nlohmann::json& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw MalformedInput(std::string(key) + " must be a non-negative integer");
    }
    const std::uint64_t raw = v.get<std::uint64_t>();
    if (raw > 0xFFFFFFFFull) {
        throw MalformedInput(std::string(key) + " exceeds 32 bits");
    }
    return static_cast<std::uint32_t>(raw);
}

std::string require_hash_hex(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw MalformedInput(std::string("missing field: ") + key);
    }
    const nlohmann::json& v = j.at(key);
    if (!v.is_string()) {
        throw MalformedInput(std::string(key) + " must be a string");
    }
    std::string hex = v.get<std::string>();
    if (hex.size() != 64) {
        throw MalformedInput(std::string(key) + " must be 64 hex chars, got " +
                             std::to_string(hex.size()));
    }
    try {
        hash_from_display_hex(hex);  // digit validation
    } catch (const MalformedInput& e) {
        throw MalformedInput(std::string(key) + ": " + e.what());
    }
    for (char& c : hex) {
        if (c >= 'A' && c <= 'F') c = static_cast<char>(c - 'A' + 'a');
    }
    return hex;
}

}  // namespace

BlockHeader BlockFixture::header() const {
    BlockHeader h;
    h.version = version;
    h.prev_hash = hash_from_display_hex(prev_hash_display);
    h.merkle_root = hash_from_display_hex(merkle_root_display);
    h.timestamp = timestamp;
    h.nbits = bits;
    h.nonce = nonce.value_or(0);
    return h;
}

std::string BlockFixture::to_json_line() const {
    nlohmann::json j{
        {"height", height},
        {"version", version},
        {"prev_hash_display", prev_hash_display},
        {"merkle_root_display", merkle_root_display},
        {"timestamp", timestamp},
        {"bits", bits},
    };
    if (nonce) j["nonce"] = *nonce;
    if (hash_display) j["hash_display"] = *hash_display;
    return j.dump();
}

std::uint64_t Splitmix64::next_below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("bound must be positive");
    // Reject the incomplete final copy of [0, bound) at the top of the
    // 64-bit range so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

std::vector<std::uint64_t> sample_heights(const SamplerConfig& cfg) {
    if (cfg.count == 0) throw InvalidArgument("count must be at least 1");
    if (cfg.max_height == 0) throw InvalidArgument("max_height must be at least 1");
    if (cfg.count > cfg.max_height) {
        throw InvalidArgument("count " + std::to_string(cfg.count) +
                              " exceeds max_height " + std::to_string(cfg.max_height));
    }

    Splitmix64 rng(cfg.seed);
    // Partial Fisher-Yates over the virtual array a[i] = i + 1 for
    // i in [0, max_height); only displaced entries are stored.
    std::unordered_map<std::uint64_t, std::uint64_t> displaced;
    const auto value_at = [&](std::uint64_t idx) {
        const auto it = displaced.find(idx);
        return it == displaced.end() ? idx + 1 : it->second;
    };

    std::vector<std::uint64_t> out;
    out.reserve(cfg.count);
    for (std::uint64_t i = 0; i < cfg.count; ++i) {
        const std::uint64_t j = i + rng.next_below(cfg.max_height - i);
        out.push_back(value_at(j));
        displaced[j] = value_at(i);
    }
    return out;
}

BlockFixture parse_fixture_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedInput("fixture line must be a JSON object");

    BlockFixture f;
    if (!j.contains("height")) throw MalformedInput("missing field: height");
    if (!j.at("height").is_number_unsigned() &&
        !(j.at("height").is_number_integer() && j.at("height").get<std::int64_t>() >= 0)) {
        throw MalformedInput("height must be a non-negative integer");
    }
    f.height = j.at("height").get<std::uint64_t>();
    f.version = require_u32(j, "version");
    f.prev_hash_display = require_hash_hex(j, "prev_hash_display");
    f.merkle_root_display = require_hash_hex(j, "merkle_root_display");
    f.timestamp = require_u32(j, "timestamp");
    f.bits = require_u32(j, "bits");
    if (j.contains("nonce") && !j.at("nonce").is_null()) {
        f.nonce = require_u32(j, "nonce");
    }
    if (j.contains("hash_display") && !j.at("hash_display").is_null()) {
        f.hash_display = require_hash_hex(j, "hash_display");
    }

    if (f.nonce && f.hash_display) {
        const VerificationResult v = verify_block(f.header());
        if (v.hash_display != *f.hash_display) {
            throw MalformedInput("fixture hash mismatch: recomputed " + v.hash_display +
                                 ", fixture says " + *f.hash_display);
        }
        if (!v.valid) {
            throw MalformedInput("fixture hash does not meet its own target");
        }
    }
    return f;
}

std::vector<BlockFixture> load_fixtures(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::vector<BlockFixture> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_fixture_line(line));
        } catch (const MalformedInput& e) {
            throw MalformedInput(path.string() + " line " + std::to_string(line_no) +
                                 ": " + e.what());
        }
    }
    return out;
}

}  // namespace noncebench
