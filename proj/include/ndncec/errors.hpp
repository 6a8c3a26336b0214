#pragma once

#include <stdexcept>
#include <string>

namespace ndncec {

// Bad user input: malformed names, invalid parameters, broken topology specs.
// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A protocol timing constraint cannot be met (read after expiry, event
// scheduled in the past, ...). The CLI maps this to exit code 2.
class ConstraintError : public std::runtime_error {
public:
  explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ndncec
