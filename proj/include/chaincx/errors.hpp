#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chaincx {

/// A caller broke a structural precondition (lengths, ranges, caps on inputs).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs are well formed but lie outside the domain of the operation,
/// e.g. an infeasible rank vector.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No feasible rank vector produces the requested Betti numbers.
class NoRealizingRanks : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerically computed ranks are not feasible for the shape; the tolerances
/// do not fit the data.
class RankInconsistency : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Refusal to start work whose size exceeds a configured cap.
class WorkCapExceeded : public std::runtime_error {
 public:
  WorkCapExceeded(const std::string& what, std::uint64_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

}  // namespace chaincx
