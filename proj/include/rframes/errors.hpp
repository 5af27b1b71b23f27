#pragma once

#include <stdexcept>
#include <string>

namespace rframes {

// Precondition violation on an input value. `field()` names the offending
// quantity ("v", "u_c", "alpha", "index", ...).
class DomainError : public std::domain_error {
 public:
  DomainError(std::string field, const std::string& what);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// The quadrature normalization fell below the configured floor.
class DegenerateSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sampled grid violates one of its invariants. `invariant()` is a short
// identifier such as "boundary_decay" or "congruence".
class GridInvariantError : public std::runtime_error {
 public:
  GridInvariantError(std::string invariant, const std::string& what);
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// Malformed structured-text input. Line 0 means "whole document".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace rframes
