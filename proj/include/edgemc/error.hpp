#pragma once

#include <stdexcept>
#include <string>

namespace edgemc {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or unreadable input data: size mismatches, IO failures, malformed files.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Seed selection found no configuration-1 cube in the requested region.
class NoSeedsError : public DataError {
 public:
  using DataError::DataError;
};

/// Interpolation requested on an edge whose end values are equal.
class NoCrossingError : public Error {
 public:
  using Error::Error;
};

/// A growth edge whose endpoints do not lie on one cube face.
class MalformedEdgeError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; should be unreachable.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace edgemc
