#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapeforge {

// Base class for all library errors. Subclasses distinguish the failure
// domain so the C API can map them onto stable status codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (Turtle, shape files, rule files, specs).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(msg + " at line " + std::to_string(line) + ", col " +
              std::to_string(col)),
        line(line),
        col(col) {}
  explicit ParseError(const std::string& msg) : Error(msg), line(0), col(0) {}

  std::size_t line;
  std::size_t col;
};

// A prefixed name used a prefix that was never declared.
class UnknownPrefixError : public ParseError {
 public:
  explicit UnknownPrefixError(const std::string& prefix)
      : ParseError("unknown prefix '" + prefix + ":'"), prefix(prefix) {}

  std::string prefix;
};

// Violated operation precondition or invalid argument combination.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// External lookup (type fetch, country lookup, entity linking) failed or
// was required but not configured.
class LookupError : public Error {
 public:
  using Error::Error;
};

// A sampler could not satisfy its size or coverage requirement.
class SamplingError : public Error {
 public:
  using Error::Error;
};

// Filesystem or transport failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace shapeforge
