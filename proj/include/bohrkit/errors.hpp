#pragma once

#include <stdexcept>
#include <string>

namespace bohrkit {

/// Argument outside the mathematical domain of an operation (gamma >= 1, r >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input is in-domain but violates an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature, truncation or root-finding could not meet its target.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The endpoints handed to a bracketed solver do not straddle a sign change.
class BracketingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A fit or scan had too little signal above numerical noise to conclude anything.
class InconclusiveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bohrkit
