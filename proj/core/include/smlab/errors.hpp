#pragma once

#include <stdexcept>
#include <string>

namespace smlab {

/// A precondition or input-shape violation. Maps to CLI exit code 2.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap was exceeded. Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smlab
