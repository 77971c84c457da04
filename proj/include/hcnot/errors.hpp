#ifndef HCNOT_ERRORS_HPP
#define HCNOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hcnot {

/// Raised when a caller violates a precondition (bad dimension, non-Hermitian
/// input, value out of range, malformed configuration).
class UsageError : public std::invalid_argument {
public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical routine fails to deliver its postcondition
/// (non-convergence, loss of positivity beyond tolerance).
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hcnot

#endif  // HCNOT_ERRORS_HPP
