#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fjerk {

/// Failure categories raised by the analysis and simulation layers.
/// Input validation problems (bad ranges, malformed orders) are reported as
/// std::invalid_argument instead; these codes describe conditions of the
/// mathematics itself.
enum class Errc {
  SingularAngle,
  NegativeDiscriminant,
  NoPositiveRoot,
  ExcludedAlpha,
  ExcludedDenominator,
  ZeroCoefficient,
  CaseNotSatisfied,
  Unsupported,
  DegenerateParameter,
  ResidualTooLarge,
  Divergence,
  TangentCollapse,
  EmptyAfterTransient,
};

std::string_view to_string(Errc code) noexcept;

class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when a state component becomes non-finite during integration.
class DivergenceError : public DomainError {
 public:
  DivergenceError(double time, const std::string& what)
      : DomainError(Errc::Divergence, what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace fjerk
