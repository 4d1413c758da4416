#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// A domain invariant or precondition was violated (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bloch parameters or matrix entries that do not describe a positive state.
class UnphysicalStateError : public ValidationError {
 public:
  UnphysicalStateError(const std::string& what, double min_eigenvalue)
      : ValidationError(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Malformed input documents (CLI exit code 1).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcorr
