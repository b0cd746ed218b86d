#pragma once

#include <stdexcept>
#include <string>

namespace mvs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raster or volume shapes that cannot be combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameter or input content outside its legal domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Failure reading or writing a file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvs
