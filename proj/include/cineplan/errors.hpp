#pragma once

#include <stdexcept>
#include <string>

namespace cineplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A document that parses but violates a domain invariant. `field()` holds a
/// JSON-style path such as `tasks[0].waypoints[1].t`.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NoPathError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string limit, const std::string& message)
      : Error(message), limit_(std::move(limit)) {}

  /// One of "max_vertices", "max_plans", "max_combinations".
  const std::string& limit() const noexcept { return limit_; }

 private:
  std::string limit_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cineplan
