#pragma once

#include <stdexcept>
#include <string>

namespace kcompound {

/// Argument outside the mathematical domain of an operation
/// (bad k, non-square input, empty vector, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation is defined, but not for this input under the conventions
/// we support (e.g. a real principal matrix power of a matrix with an
/// eigenvalue on the closed negative real axis).
class UnsupportedDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A fixed-step integration produced a non-finite state.
class IntegrationBlowup : public std::runtime_error {
 public:
  IntegrationBlowup(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace kcompound
