#pragma once

#include <cstdint>
#include <string>

#include "noncebench/ingest.hpp"

namespace noncebench {

struct FetchOptions {
    std::string endpoint;        // base URL, optionally with a path prefix
    int timeout_seconds = 10;
};

// Endpoint from the NONCEBENCH_API environment variable, empty if unset.
std::string default_endpoint();

// Maps one explorer response body to BlockFixture. Accepts the native
// fixture schema plus the common explorer spellings (ver/prev_block/
// mrkl_root/time, previousblockhash/merkleroot with hex-string bits).
// Missing fields raise SchemaMismatch naming the field.
BlockFixture fixture_from_explorer_json(const std::string& body);

// GET {endpoint}/block/{height}, then fixture_from_explorer_json plus the
// fixture validation rules. Connection failures raise NetworkError
// (retryable); non-2xx responses raise HttpStatusError (retryable iff 5xx).
BlockFixture fetch_header(std::uint64_t height, const FetchOptions& opts);

}  // namespace noncebench
