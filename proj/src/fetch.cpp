#include "noncebench/fetch.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>

#include <json.hpp>

#include "noncebench/errors.hpp"
#include "noncebench/pow.hpp"

namespace noncebench {

namespace {

std::uint32_t u32_field(const nlohmann::json& j, const char* key, const char* canonical) {
    const nlohmann::json& v = j.at(key);
    std::uint64_t raw = 0;
    if (v.is_number_unsigned()) {
        raw = v.get<std::uint64_t>();
    } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        raw = static_cast<std::uint64_t>(v.get<std::int64_t>());
    } else if (v.is_string()) {
        // Core-style explorers encode bits as a hex string ("1d00ffff").
        const std::string s = v.get<std::string>();
        if (s.empty() || s.size() > 8) {
            throw SchemaMismatch(std::string("field ") + canonical + " has bad hex value '" + s + "'");
        }
        std::size_t pos = 0;
        try {
            raw = std::stoull(s, &pos, 16);
        } catch (const std::exception&) {
            throw SchemaMismatch(std::string("field ") + canonical + " has bad hex value '" + s + "'");
        }
        if (pos != s.size()) {
            throw SchemaMismatch(std::string("field ") + canonical + " has bad hex value '" + s + "'");
        }
    } else {
        throw SchemaMismatch(std::string("field ") + canonical + " has unexpected type");
    }
    if (raw > 0xFFFFFFFFull) {
        throw SchemaMismatch(std::string("field ") + canonical + " exceeds 32 bits");
    }
    return static_cast<std::uint32_t>(raw);
}

// First present key wins; nullptr-terminated alternatives list.
const char* pick_key(const nlohmann::json& j, std::initializer_list<const char*> names) {
    for (const char* name : names) {
        if (j.contains(name) && !j.at(name).is_null()) return name;
    }
    return nullptr;
}

}  // namespace

std::string default_endpoint() {
    const char* env = std::getenv("NONCEBENCH_API");
    return env ? env : "";
}

BlockFixture fixture_from_explorer_json(const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaMismatch(std::string("response is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaMismatch("response is not a JSON object");

    const struct {
        const char* canonical;
        std::initializer_list<const char*> names;
        bool required;
    } fields[] = {
        {"height", {"height", "block_index"}, true},
        {"version", {"version", "ver"}, true},
        {"prev_hash_display", {"prev_hash_display", "prev_block", "previousblockhash"}, true},
        {"merkle_root_display", {"merkle_root_display", "mrkl_root", "merkleroot"}, true},
        {"timestamp", {"timestamp", "time"}, true},
        {"bits", {"bits"}, true},
        {"nonce", {"nonce"}, false},
        {"hash_display", {"hash_display", "hash"}, false},
    };

    nlohmann::json normalized;
    for (const auto& field : fields) {
        const char* key = pick_key(j, field.names);
        if (!key) {
            if (field.required) {
                throw SchemaMismatch(std::string("missing field: ") + field.canonical);
            }
            continue;
        }
        normalized[field.canonical] = j.at(key);
    }
    if (normalized.contains("bits")) {
        normalized["bits"] = u32_field(normalized, "bits", "bits");
    }

    try {
        return parse_fixture_line(normalized.dump());
    } catch (const MalformedInput& e) {
        throw SchemaMismatch(e.what());
    }
}

BlockFixture fetch_header(std::uint64_t height, const FetchOptions& opts) {
    if (opts.endpoint.empty()) {
        throw InvalidArgument("no endpoint: pass --endpoint or set NONCEBENCH_API");
    }

    // Split a path prefix off the base URL; httplib clients take only
    // scheme://host:port.
    std::string base = opts.endpoint;
    std::string prefix;
    const std::size_t scheme = base.find("://");
    const std::size_t path_start = base.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start != std::string::npos) {
        prefix = base.substr(path_start);
        base = base.substr(0, path_start);
        while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    }

    httplib::Client client(base);
    client.set_connection_timeout(opts.timeout_seconds, 0);
    client.set_read_timeout(opts.timeout_seconds, 0);
    client.set_follow_location(true);

    const std::string path = prefix + "/block/" + std::to_string(height);
    httplib::Result res = client.Get(path);
    if (!res) {
        throw NetworkError("GET " + base + path + " failed: " + httplib::to_string(res.error()),
                           /*retryable=*/true);
    }
    if (res->status < 200 || res->status >= 300) {
        throw HttpStatusError("GET " + base + path + " returned status " +
                                  std::to_string(res->status),
                              res->status,
                              /*retryable=*/res->status >= 500);
    }
    return fixture_from_explorer_json(res->body);
}

}  // namespace noncebench
