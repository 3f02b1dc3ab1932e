#pragma once

#include <stdexcept>
#include <string>

namespace bertrand {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a removable-but-excluded or genuine singular point
/// (projection pole, inversion centre, vanishing Staeckel factor).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A model variant the toolkit does not implement.
class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative procedure failed to bracket or converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shooting solution does not satisfy the matching condition.
class NotAnEigenvalueError : public NumericError {
 public:
  using NumericError::NumericError;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace bertrand
