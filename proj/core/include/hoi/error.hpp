#pragma once

#include <stdexcept>
#include <string>

namespace hoi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied data does not hold.
class InputError : public Error {
public:
  using Error::Error;
};

/// Too few samples for the requested estimate (matches, correspondences, pixels).
class InsufficientDataError : public InputError {
public:
  using InputError::InputError;
};

/// A point at or behind the image plane was projected.
class BehindCameraError : public InputError {
public:
  using InputError::InputError;
};

/// A file could not be parsed or has the wrong layout.
class FormatError : public Error {
public:
  using Error::Error;
};

}  // namespace hoi
