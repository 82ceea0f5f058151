#pragma once

#include <stdexcept>
#include <string>

namespace x0n {

// Raised when a computed quantity violates an identity that must hold
// exactly (a non-integral genus, a non-integral Delta coefficient, a
// kernel of unexpected dimension, ...). Always a bug or a bad input
// series, never a recoverable condition.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Raised when a caller asks for a coefficient beyond the known precision
// of a truncated series.
class PrecisionError : public std::out_of_range {
 public:
  explicit PrecisionError(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace x0n
