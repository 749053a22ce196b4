#pragma once

#include <array>
#include <complex>
#include <vector>

#include "fjerk/core/model.hpp"

namespace fjerk::stability {

/// lambda^3 + a eps lambda^2 + b lambda -+ 2 eps, coefficients in descending
/// order. The constant is -2 eps on the Plus branch and +2 eps on Minus.
struct CharCubic {
  std::array<double, 4> coeffs{};
  Branch branch = Branch::Plus;

  std::complex<double> operator()(std::complex<double> lambda) const;
};

CharCubic char_cubic(const JerkParams& params, Branch branch);

/// Real and imaginary parts of a characteristic function at r e^{i theta}.
struct PolarPair {
  double re = 0.0;
  double im = 0.0;
};

PolarPair char_eval_polar_comm(const JerkParams& params, Branch branch, double r, double theta);

/// a^2 eps^2 sin^2(2 theta) - 4 b sin(3 theta) sin(theta).
double discriminant_delta(const JerkParams& params, double theta);

/// Both roots in r of the imaginary-part quadratic
/// r^2 sin 3t + r a eps sin 2t + b sin t = 0.
struct RCandidates {
  double r1 = 0.0;
  double r2 = 0.0;
  double product = 0.0;

  int positive_count() const noexcept { return (r1 > 0.0) + (r2 > 0.0); }
};

/// Throws DomainError(SingularAngle) for |sin 3 theta| < 1e-12 and
/// DomainError(NegativeDiscriminant) for Delta < 0.
RCandidates r_candidates(const JerkParams& params, double theta);

/// Critical point of the Hopf bifurcation: a root pair of modulus gamma_H
/// sits on the ray arg = theta when eps = eps_H.
struct HopfSolution {
  double gamma_H = 0.0;
  double epsilon_H = 0.0;
  double theta = 0.0;
  Branch branch = Branch::Plus;
  double residual_re = 0.0;
  double residual_im = 0.0;
};

/// Solves the real and imaginary characteristic equations at theta = pi
/// alpha / 2 simultaneously for (gamma_H, eps_H). Both are linear in eps, so
/// eps is eliminated and the remaining equation in r is bracketed on
/// (1e-6, Cauchy bound) and refined; eps_H then follows from the real part.
/// When several positive roots exist the smallest one is returned.
///
/// Errors: SingularAngle when |sin 3 theta| < 1e-3 (alpha within about 2e-4
/// of 2/3), CaseNotSatisfied unless (alpha > 2/3, b > 0) or (alpha < 2/3,
/// b < 0), NoPositiveRoot, ExcludedAlpha when the eps_H denominator vanishes.
HopfSolution hopf_commensurate(double a, double b, double alpha, Branch branch);

/// Orders alpha in (0, 1] with cos(pi alpha) = +-2 / (a gamma^2), ascending.
std::vector<double> excluded_alphas(double a, double gamma);

}  // namespace fjerk::stability
