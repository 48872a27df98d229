#pragma once

#include <stdexcept>
#include <string>

namespace coverph {

// Caller broke a documented precondition (mixed bases, non-natural matrix,
// non-chain differentials, ...).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration or unreadable input (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A cover whose patches do not jointly contain every global simplex
// (CLI exit code 3).
class CoverViolationError : public std::runtime_error {
public:
    explicit CoverViolationError(const std::string& what) : std::runtime_error(what) {}
};

// A condition that theory guarantees failed at runtime — indicates a bug
// upstream, not bad user input (CLI exit code 5).
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace coverph
