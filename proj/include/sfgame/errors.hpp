#pragma once

#include <stdexcept>
#include <string>

namespace sfgame {

/// Invalid configuration value, unknown table key, or constraint violation.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called with arguments it is not meant for
/// (e.g. comparing results from mismatched configurations).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sfgame
