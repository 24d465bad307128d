#pragma once

#include <stdexcept>
#include <string>

namespace nldiff {

/// Base class of every error raised by the library. Subclasses name the
/// failure mode so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or configuration values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnderresolvedKernel : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class CorruptSnapshot : public Error {
 public:
  using Error::Error;
};

/// A time step produced NaN or Inf.
class NonfiniteState : public Error {
 public:
  using Error::Error;
};

class EmptyExclusionRegion : public Error {
 public:
  using Error::Error;
};

class InvalidAlpha : public Error {
 public:
  using Error::Error;
};

class SubcriticalExponent : public Error {
 public:
  using Error::Error;
};

class SingularDatumUnsupported : public Error {
 public:
  using Error::Error;
};

class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

class NonpositiveValue : public Error {
 public:
  using Error::Error;
};

class WindowExceedsDomain : public Error {
 public:
  using Error::Error;
};

}  // namespace nldiff
