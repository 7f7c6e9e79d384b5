#pragma once

#include <stdexcept>
#include <string>

namespace spider {

/// A parameter or argument lies outside the domain of a law or operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed request: empty samples, unknown names, bad CLI combinations.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace spider
