#pragma once

#include <stdexcept>
#include <string>

namespace propid {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit statuses (see exit_status in harness.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A property specification violates one of its structural invariants.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A formula needs data of a shape the dataset does not have (e.g. the
/// gain formula on a non-square or singular X-).
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Full-rank data that no exact model reproduces: corrupted measurements.
class InconsistentData : public Error {
 public:
  using Error::Error;
};

class SectionIsRich : public Error {
 public:
  using Error::Error;
};

/// The sign assignment of a set expression admits no consistent system.
class InfeasibleSigns : public Error {
 public:
  using Error::Error;
};

/// An invariant that the mathematics guarantees did not hold.
class InternalFault : public Error {
 public:
  using Error::Error;
};

}  // namespace propid
