#pragma once

#include <stdexcept>
#include <string>

namespace osg {

/// Raised when an input violates a documented invariant (bad configuration,
/// malformed density matrix, unsupported parameter regime).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the grid propagator when probability reaches the edge of the
/// position or momentum window.
class GridLeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace osg
