#pragma once

#include <stdexcept>
#include <string>

namespace detstab {

/// Raised when inputs violate a model precondition (bad parameters, an
/// ignition level above the end state, a profile that cannot be resolved).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace detstab
