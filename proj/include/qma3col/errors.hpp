#pragma once

#include <stdexcept>
#include <string>

namespace qma3col {

// Malformed or out-of-contract input (parse errors, shape mismatches,
// invalid colorings, malformed certificates).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Certificate precision below the verifier's budget.
class PrecisionError : public InputError {
 public:
  using InputError::InputError;
};

// An iterative routine failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical invariant (Hermiticity, normalization, POVM bounds) failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qma3col
