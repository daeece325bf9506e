#pragma once

#include <stdexcept>
#include <string>

namespace gaudin {

// Input rejected before any computation (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed identity failed (CLI exit code 1).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query reached beyond the depth a truncated module was built to.
class OutOfBandError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace gaudin
