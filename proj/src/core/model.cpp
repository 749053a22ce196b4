#include "fjerk/core/model.hpp"

#include <stdexcept>
#include <string>

#include "fjerk/core/errors.hpp"

namespace fjerk {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SingularAngle: return "SingularAngle";
    case Errc::NegativeDiscriminant: return "NegativeDiscriminant";
    case Errc::NoPositiveRoot: return "NoPositiveRoot";
    case Errc::ExcludedAlpha: return "ExcludedAlpha";
    case Errc::ExcludedDenominator: return "ExcludedDenominator";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::CaseNotSatisfied: return "CaseNotSatisfied";
    case Errc::Unsupported: return "Unsupported";
    case Errc::DegenerateParameter: return "DegenerateParameter";
    case Errc::ResidualTooLarge: return "ResidualTooLarge";
    case Errc::Divergence: return "Divergence";
    case Errc::TangentCollapse: return "TangentCollapse";
    case Errc::EmptyAfterTransient: return "EmptyAfterTransient";
  }
  return "Unknown";
}

std::string_view to_string(Branch branch) noexcept {
  return branch == Branch::Plus ? "plus" : "minus";
}

Branch parse_branch(std::string_view text) {
  if (text == "plus") return Branch::Plus;
  if (text == "minus") return Branch::Minus;
  throw std::invalid_argument("branch must be 'plus' or 'minus', got '" + std::string(text) + "'");
}

Vec3 vector_field(const JerkParams& p, const Vec3& s) noexcept {
  const double eps = p.epsilon;
  return {s[1], s[2], -eps * eps - p.b * s[1] - p.a * eps * s[2] + s[0] * s[0]};
}

Mat3 jacobian(const JerkParams& p, const Vec3& s) noexcept {
  return {{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {2.0 * s[0], -p.b, -p.a * p.epsilon}}};
}

EquilibriumSet equilibria(const JerkParams& params) {
  const double eps = params.epsilon;
  if (eps == 0.0) return {{{Vec3{0.0, 0.0, 0.0}, Branch::Plus}}, true};
  return {{{Vec3{eps, 0.0, 0.0}, Branch::Plus}, {Vec3{-eps, 0.0, 0.0}, Branch::Minus}}, false};
}

Mat3 jacobian_at(const JerkParams& params, const Equilibrium& eq) noexcept {
  const double x = eq.branch == Branch::Plus ? params.epsilon : -params.epsilon;
  return jacobian(params, Vec3{x, 0.0, 0.0});
}

}  // namespace fjerk
