#pragma once

#include <stdexcept>
#include <string>

namespace hml {

/// Base class for every error raised by the library. Each subclass maps to
/// one failure category so the CLI can choose an exit status.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidField : public Error {
  public:
    using Error::Error;
};

class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// A query or operator needs coefficients beyond the norm bound a system was
/// built to.
class BoundError : public Error {
  public:
    using Error::Error;
};

/// An eigenvalue table lacks a prime needed to reach the requested bound.
class IncompleteTable : public Error {
  public:
    using Error::Error;
};

/// Coefficient at an ideal sharing a prime with the level of an eigen system.
class NotCovered : public Error {
  public:
    using Error::Error;
};

class RamanujanViolation : public Error {
  public:
    using Error::Error;
};

/// A theorem hypothesis (distinct weights, good prime, ...) does not hold.
class HypothesisViolation : public Error {
  public:
    using Error::Error;
};

class PrecisionError : public Error {
  public:
    using Error::Error;
};

class DivergenceGuard : public Error {
  public:
    using Error::Error;
};

class NotApplicable : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace hml
