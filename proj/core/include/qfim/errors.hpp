#pragma once

#include <stdexcept>
#include <string>

namespace qfim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-Hermitian matrices, states off the simplex, bad shapes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Quadrature non-convergence or an eigensolver failure.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfim
