#pragma once

#include <stdexcept>
#include <string>

namespace kgr {

// Raised when an input document or a constructed graph violates the data
// model (schema errors, non-commuting matrices, bad squares, ...).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation is called outside its stated preconditions
// (non-composable paths, degree out of range, hypothesis violations).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kgr
