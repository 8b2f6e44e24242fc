#pragma once

#include <stdexcept>
#include <string>

namespace maghom {

// Malformed input text (edge list, graph6, certificate files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a structural requirement
// (loops, disconnected graphs, invalid certificates, bad parameters).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap (basis size, search nodes) was hit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A self-check failed. Always a bug signal.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace maghom
