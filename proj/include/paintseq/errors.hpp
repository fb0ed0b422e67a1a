#pragma once

#include <stdexcept>

namespace paintseq {

/// Error taxonomy shared across the library. The CLI maps these onto its
/// exit-code scheme; library users can catch the base type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance data breaks a structural requirement (ids, matrix shapes).
struct InvalidInstanceError : Error {
  using Error::Error;
};

/// An order is not a permutation of the instance's vehicle ids.
struct InvalidSequenceError : Error {
  using Error::Error;
};

/// Vector/bitstring length does not match the model or state dimension.
struct DimensionError : Error {
  using Error::Error;
};

/// Requested problem size exceeds a configured enumeration or memory cap.
struct CapacityError : Error {
  using Error::Error;
};

/// Input file is structurally malformed (bad JSON, missing fields).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace paintseq
