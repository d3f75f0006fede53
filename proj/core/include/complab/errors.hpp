#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace complab {

// Error taxonomy. ResourceError subclasses correspond to computations that
// hit a configured cap; everything else is a usage / input problem.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct SpecError : Error {
  using Error::Error;
};
struct NotNormal : Error {
  using Error::Error;
};
struct NotAbelian : Error {
  using Error::Error;
};
struct NotElementaryAbelian : Error {
  using Error::Error;
};
struct NotSurjective : Error {
  using Error::Error;
};
struct LevelOutOfRange : Error {
  using Error::Error;
};
struct GrouplikeViolation : Error {
  using Error::Error;
};

struct ResourceError : Error {
  using Error::Error;
};

struct EnumerationLimit : ResourceError {
  explicit EnumerationLimit(std::uint64_t cap_)
      : ResourceError("enumeration exceeded cap " + std::to_string(cap_)), cap(cap_) {}
  std::uint64_t cap;
};

struct DimensionLimit : ResourceError {
  using ResourceError::ResourceError;
};

struct SearchSpaceTooLarge : ResourceError {
  using ResourceError::ResourceError;
};

}  // namespace complab
