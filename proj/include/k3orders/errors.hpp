#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace k3orders {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct NonSymmetricError : Error {
  using Error::Error;
};

/// An embedding candidate fails to preserve the bilinear form.
/// Carries the first offending pair of source basis indices.
struct FormMismatchError : Error {
  std::size_t i, j;
  FormMismatchError(std::size_t i_, std::size_t j_, const std::string& what)
      : Error(what), i(i_), j(j_) {}
};

struct DegenerateSourceError : Error {
  using Error::Error;
};

struct DegenerateLatticeError : Error {
  using Error::Error;
};

struct NotAnIsometryError : Error {
  using Error::Error;
};

struct WrongOrderError : Error {
  using Error::Error;
};

struct OddEntryError : Error {
  using Error::Error;
};

struct NotACocycleError : Error {
  using Error::Error;
};

struct SquareTooNegativeError : Error {
  using Error::Error;
};

/// An ample certificate was requested before its effectivity hypotheses
/// were established; the message names the missing certificate.
struct UncertifiedHypothesisError : Error {
  using Error::Error;
};

struct NoAmpleCertificateError : Error {
  using Error::Error;
};

struct UnsupportedRankError : Error {
  using Error::Error;
};

struct UnsupportedTorsionError : Error {
  using Error::Error;
};

struct NegativeMultiplicityError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

/// Scenario file violates the schema; carries the offending field path.
struct SchemaError : Error {
  std::string path;
  SchemaError(std::string path_, const std::string& what)
      : Error(what), path(std::move(path_)) {}
};

struct UnknownScenarioError : Error {
  using Error::Error;
};

struct OutOfRangeNError : Error {
  using Error::Error;
};

}  // namespace k3orders
