#pragma once

#include <stdexcept>
#include <string>

namespace dq {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An object violates an identity it must satisfy (d∘d ≠ 0, a cosimplicial
// identity, a DG-Lie axiom required as a precondition, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A map that was required to commute with differentials does not.
class ChainMapError : public Error {
 public:
  using Error::Error;
};

// A truncated computation needed a term beyond its declared cap.
class OverflowError : public Error {
 public:
  OverflowError(std::string cap, const std::string& what)
      : Error(what), cap_(std::move(cap)) {}
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

// Malformed external input (JSON, expressions, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Arguments outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dq
