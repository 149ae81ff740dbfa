#pragma once

#include <stdexcept>
#include <string>

namespace conedec {

/// Input matrix has determinant zero where a nonsingular one is required.
class SingularMatrixError : public std::domain_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::domain_error(what) {}
};

/// A generator column is identically zero.
class DegenerateGeneratorError : public std::domain_error {
 public:
  explicit DegenerateGeneratorError(const std::string& what) : std::domain_error(what) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace conedec
