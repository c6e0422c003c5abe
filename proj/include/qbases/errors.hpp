#pragma once

#include <stdexcept>
#include <string>

namespace qbases {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

/// A q-number appearing in a denominator vanishes at the requested parameter.
class DegenerateDenominator : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "DegenerateDenominator"; }
};

class NonLieBasis : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonLieBasis"; }
};

class NonCrystalBasis : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonCrystalBasis"; }
};

/// Highest-weight extraction found a null space of the wrong dimension.
class DecompositionFailure : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "DecompositionFailure"; }
};

/// A convergence sequence cannot support a slope fit.
class InvalidSequence : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "InvalidSequence"; }
};

class WordTooLong : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "WordTooLong"; }
};

class UnknownCheck : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "UnknownCheck"; }
};

/// Malformed spin, weight, or parameter text.
class InvalidArgument : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "InvalidArgument"; }
};

}  // namespace qbases
