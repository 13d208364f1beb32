#pragma once

#include <stdexcept>
#include <string>

namespace lightcyl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// A Gram matrix that should be positive definite is not (the point is not space-like).
class DegenerateSubspaceError : public Error {
public:
  using Error::Error;
};

/// No seed produced a usable pairing with the light-like normal.
class DegenerateNormalError : public Error {
public:
  using Error::Error;
};

class NotNormalError : public Error {
public:
  using Error::Error;
};

/// The immersion does not lie on the hypercylinder at the requested point.
class NotOnCylinderError : public Error {
public:
  using Error::Error;
};

/// Unknown generator family or malformed generator parameters.
class UsageError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Evaluation left the domain of an elementary function (log, sqrt, division, spline range).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A finite-difference stencil would leave the declared parameter domain.
class StencilError : public Error {
public:
  using Error::Error;
};

/// Integration of the warped-product ODE reached the lower bound on the warping function.
class BlowDownError : public Error {
public:
  BlowDownError(const std::string& what, double critical_s) : Error(what), critical_s_(critical_s) {}
  double critical_s() const noexcept { return critical_s_; }

private:
  double critical_s_;
};

/// Lexical, syntactic or resolution error in the immersion DSL. Positions are 1-based.
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

private:
  int line_;
  int column_;
  std::string message_;
};

class UndeclaredIdentifierError : public ParseError {
public:
  using ParseError::ParseError;
};

class ArityError : public ParseError {
public:
  using ParseError::ParseError;
};

}  // namespace lightcyl
