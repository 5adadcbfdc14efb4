#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nc11 {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent instance (file or in-memory).
class InstanceError : public Error {
 public:
  explicit InstanceError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Destination not reachable from the source.
class RoutingError : public Error {
 public:
  using Error::Error;
};

// No pair of edge-disjoint paths exists; carries the offending cut edge.
class SurvivabilityError : public Error {
 public:
  SurvivabilityError(const std::string& what, int cut_u, int cut_v)
      : Error(what), cut_u_(cut_u), cut_v_(cut_v) {}

  int cut_u() const noexcept { return cut_u_; }
  int cut_v() const noexcept { return cut_v_; }

 private:
  int cut_u_;
  int cut_v_;
};

// Caller broke a precondition (routing does not cover the demand set, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Two demands cannot be coded together (e.g. different destinations).
class FeasibilityError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Closed forms asked for outside their domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search refused because the configuration space is too large.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace nc11
