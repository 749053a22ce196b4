#pragma once

#include <string_view>
#include <vector>

#include "fjerk/core/types.hpp"

namespace fjerk {

/// Constants of the quadratic jerk system
///   D x = y,  D y = z,  D z = -eps^2 - b y - a eps z + x^2.
struct JerkParams {
  double a = 0.129;
  double b = 7.0;
  double epsilon = 0.0;
};

/// Plus is the equilibrium at x = +eps, Minus the one at x = -eps.
enum class Branch { Plus, Minus };

std::string_view to_string(Branch branch) noexcept;
/// Accepts "plus" / "minus"; throws std::invalid_argument otherwise.
Branch parse_branch(std::string_view text);

/// Sign of the constant term of the characteristic cubic: -2 eps for Plus,
/// +2 eps for Minus.
constexpr double constant_sign(Branch branch) noexcept {
  return branch == Branch::Plus ? -2.0 : 2.0;
}

struct Equilibrium {
  Vec3 point{};
  Branch branch = Branch::Plus;
};

struct EquilibriumSet {
  std::vector<Equilibrium> points;
  /// eps == 0: both equilibria collapse to the origin.
  bool degenerate = false;
};

Vec3 vector_field(const JerkParams& params, const Vec3& state) noexcept;

/// Jacobian of vector_field at an arbitrary state.
Mat3 jacobian(const JerkParams& params, const Vec3& state) noexcept;

EquilibriumSet equilibria(const JerkParams& params);

Mat3 jacobian_at(const JerkParams& params, const Equilibrium& eq) noexcept;

}  // namespace fjerk
