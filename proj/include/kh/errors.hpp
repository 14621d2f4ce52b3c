#pragma once

#include <stdexcept>
#include <string>

namespace kh {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The four points of a set violate a1 <= a2 <= a3 <= a4.
class NotCnf : public Error {
public:
  using Error::Error;
};

/// A membership level or step outside its admissible range.
class OutOfRange : public Error {
public:
  using Error::Error;
};

/// Two intervals taken at different alpha levels were combined.
class LevelMismatch : public Error {
public:
  using Error::Error;
};

/// The rules of an interpolation problem are not strictly ordered
/// around the observation (or the consequents are not ordered).
class OrderingViolation : public Error {
public:
  using Error::Error;
};

/// An alpha grid without 0 and 1, or with non-increasing levels.
class InvalidGrid : public Error {
public:
  using Error::Error;
};

/// The interpolation denominator vanished: both antecedent flanks
/// coincide with the observation flank at this level.
class DegenerateRules : public Error {
public:
  explicit DegenerateRules(double alpha, const std::string& what)
      : Error(what), alpha_(alpha) {}
  double alpha() const { return alpha_; }

private:
  double alpha_;
};

/// Requested the hyperbolic decomposition of a flank that has none
/// (the rational denominator is constant, so the flank is polynomial).
class PolynomialFlank : public Error {
public:
  using Error::Error;
};

/// A suite file that is not syntactically valid JSON.
class ParseError : public Error {
public:
  using Error::Error;
};

/// A suite file that parses but violates the schema or set invariants.
class SchemaError : public Error {
public:
  using Error::Error;
};

/// Benchmark run requested with a method id that is not registered.
class UnknownMethod : public Error {
public:
  using Error::Error;
};

}  // namespace kh
