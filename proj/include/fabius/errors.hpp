#pragma once

#include <stdexcept>

namespace fabius {

// Two independent computations of the same quantity disagreed, or a value
// proven to be an integer came out fractional.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A sequence index exceeded the configured cache limit.
class CacheLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Exact evaluation requested at a point where the reduction never terminates.
class NonTerminatingEvaluation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fabius
