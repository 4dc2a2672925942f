#pragma once

#include <stdexcept>
#include <string>

namespace qhgeo {

// Invalid user input: shape parameters, scenario fields, constants outside
// their hypothesis range. The CLI maps this to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant (e.g. an unreachable vertex in a graph that
// was validated as connected).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qhgeo
