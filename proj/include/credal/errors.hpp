#pragma once

#include <stdexcept>
#include <string>

namespace credal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors or matrices whose sizes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A brute-force routine was asked to enumerate more than its guard allows.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Every generator assigns probability zero to the conditioning event.
class UndefinedConditionalError : public Error {
 public:
  using Error::Error;
};

/// The requested comparison or search is outside what can be decided
/// exactly (e.g. convex continuum vs finite set, sharpness on a
/// non-convex set).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// The optimal face of a linear program is not a polytope.
class UnboundedFaceError : public Error {
 public:
  using Error::Error;
};

/// Input violates a domain invariant (negative mass, duplicate label, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed problem file or command-line value. `field` names the
/// offending input location.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace credal
