#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace endotorsion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text or JSON input. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured resource limit (the rational factorization degree cap) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A verified identity failed. Seeing one of these means the implementation is wrong.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace endotorsion
