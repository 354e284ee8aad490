#pragma once

#include <stdexcept>
#include <string>

namespace archipelago {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// Parameter vector length does not match the model (or component) arity.
class ArityError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

/// No sample of the bounding box (or of a region) could be found.
class DegenerateRegion : public Error {
 public:
  using Error::Error;
};

}  // namespace archipelago
