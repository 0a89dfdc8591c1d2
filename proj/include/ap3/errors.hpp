#pragma once

#include <stdexcept>
#include <string>

namespace ap3 {

// Bad arguments: non-prime p, mismatched field parameters, out-of-range k.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural precondition does not hold, e.g. V and W are not a direct sum.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exhaustive enumeration would exceed the configured cap.
class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested configuration cannot be realised in this field (e.g. n' > n).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Theorem hypotheses failed and the caller asked for strict enforcement.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input files or configs that cannot be parsed.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ap3
