#include "rframes/errors.hpp"

namespace rframes {

DomainError::DomainError(std::string field, const std::string& what)
    : std::domain_error(field + ": " + what), field_(std::move(field)) {}

GridInvariantError::GridInvariantError(std::string invariant,
                                       const std::string& what)
    : std::runtime_error(invariant + ": " + what),
      invariant_(std::move(invariant)) {}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                  : what),
      line_(line) {}

}  // namespace rframes
