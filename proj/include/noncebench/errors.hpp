#pragma once

#include <stdexcept>
#include <string>

namespace noncebench {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input bytes or text violating a format contract (wrong length, bad hex, bad JSON).
class MalformedInput : public Error {
public:
    using Error::Error;
};

// Compact-bits value whose decoded target would exceed 2^256 - 1.
class TargetOverflow : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure (missing file, unwritable output path).
class IoError : public Error {
public:
    using Error::Error;
};

// Transport-level failure reaching a remote endpoint.
class NetworkError : public Error {
public:
    NetworkError(const std::string& what, bool retryable)
        : Error(what), retryable_(retryable) {}

    bool retryable() const noexcept { return retryable_; }

private:
    bool retryable_;
};

// Remote endpoint answered with a non-success HTTP status.
class HttpStatusError : public NetworkError {
public:
    HttpStatusError(const std::string& what, int status, bool retryable)
        : NetworkError(what, retryable), status_(status) {}

    int status() const noexcept { return status_; }

private:
    int status_;
};

// Remote response arrived but does not match any supported explorer schema.
class SchemaMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace noncebench
