#pragma once

#include <stdexcept>
#include <string>

namespace canodual {

/// Argument outside the mathematical domain of an operation
/// (kernel evaluated at negative radius, sigma outside S_a, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation requested inside a guarded singular neighbourhood
/// (G-root poles of the dual, the log singularity at sigma = -y).
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem instance outside the solvable regime (w = 0, or w*y <= 0
/// after sign normalization).
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree beyond
/// tolerance; indicates a bug, not a bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace canodual
