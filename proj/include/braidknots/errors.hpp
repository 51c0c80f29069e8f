#pragma once

#include <stdexcept>
#include <string>

namespace braidknots {

/// A configured work bound (crossing cap, search budget) was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random generation ran out of its iteration budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation needs a one-component closure.
class NotAKnotError : public std::domain_error {
 public:
  explicit NotAKnotError(int components)
      : std::domain_error("closure has " + std::to_string(components) + " components, expected a knot"),
        components_(components) {}
  int components() const noexcept { return components_; }

 private:
  int components_;
};

/// Caller broke a precondition (e.g. stepping a finished episode).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal identity that must hold for knots did not.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Training stopped on NaN or collapsed policy entropy.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace braidknots
