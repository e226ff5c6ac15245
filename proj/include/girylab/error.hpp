#pragma once

#include <stdexcept>
#include <string>

namespace girylab {

/// A precondition on the mathematical data was violated (non-measurable set,
/// mismatched spaces, weights not summing to one, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised while ingesting external data; names the first violated invariant.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace girylab
