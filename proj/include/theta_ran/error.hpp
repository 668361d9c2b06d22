#pragma once

#include <stdexcept>
#include <string>

namespace theta_ran {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed value: non-monotone map, bad tree text, mismatched ranks.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Composition of morphisms whose endpoints do not agree.
class CompositionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration, chain count or sampling budget exceeded its cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace theta_ran
