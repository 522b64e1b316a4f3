#ifndef DRSS_ERRORS_HPP
#define DRSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drss {

// Malformed user input: bad config syntax, unknown keys, length mismatches.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter values that violate a protocol constraint (minimums, capacity).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

// Internal invariant violation; a run that trips this is aborted.
class ProtocolError : public std::logic_error {
 public:
  explicit ProtocolError(const std::string& what) : std::logic_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace drss

#endif  // DRSS_ERRORS_HPP
