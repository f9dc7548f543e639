#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elcomm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands belong to different rings") {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string_view input, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos) + " in '" +
              std::string(input) + "'") {}
  explicit ParseError(const std::string& what) : Error(what) {}
};

class UnassignedLetter : public Error {
 public:
  explicit UnassignedLetter(const std::string& name)
      : Error("no image assigned to letter '" + name + "'") {}
};

class UnknownTag : public Error {
 public:
  explicit UnknownTag(char tag)
      : Error(std::string("ideal tag '") + tag + "' is not carried by any letter of the ring") {}
};

class DegreeBoundExceeded : public Error {
 public:
  DegreeBoundExceeded(std::size_t degree, std::size_t bound)
      : Error("monomial degree " + std::to_string(degree) + " exceeds bound " +
              std::to_string(bound)) {}
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedBackend : public Error {
 public:
  using Error::Error;
};

/// Raised when a construction needs n >= 4 but n = 3 was requested.
class NotSupported : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("closure exceeded cap of " + std::to_string(cap) + " elements"), cap_(cap) {}
  CapExceeded(const std::string& what, std::size_t cap) : Error(what + " exceeds cap of " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace elcomm
