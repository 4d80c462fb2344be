#pragma once

#include <stdexcept>

namespace veemap {

/// Raised when an operation's precondition does not hold for its input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace veemap
