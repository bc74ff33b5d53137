#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace berger {

/// Precondition or argument-domain violation. The CLI maps this to exit code 2.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical contract (residual, quadrature, cross-check) did not hold.
/// Carries the name of the failing invariant. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string invariant, const std::string& what)
      : std::runtime_error(invariant + ": " + what), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace berger
