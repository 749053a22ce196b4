#include "fjerk/stability/commensurate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fjerk/core/errors.hpp"
#include "fjerk/core/types.hpp"
#include "roots.hpp"

namespace fjerk::stability {

namespace {

constexpr double kSingularSin3 = 1e-12;
constexpr double kHopfSingularSin3 = 1e-3;
constexpr double kDenominatorGuard = 1e-10;
constexpr double kResidualTol = 1e-8;
constexpr double kRMin = 1e-6;
constexpr int kScanSamples = 4000;

}  // namespace

std::complex<double> CharCubic::operator()(std::complex<double> lambda) const {
  return ((coeffs[0] * lambda + coeffs[1]) * lambda + coeffs[2]) * lambda + coeffs[3];
}

CharCubic char_cubic(const JerkParams& p, Branch branch) {
  return {{1.0, p.a * p.epsilon, p.b, constant_sign(branch) * p.epsilon}, branch};
}

PolarPair char_eval_polar_comm(const JerkParams& p, Branch branch, double r, double theta) {
  const double r2 = r * r;
  const double r3 = r2 * r;
  const double ae = p.a * p.epsilon;
  return {r3 * std::cos(3.0 * theta) + r2 * ae * std::cos(2.0 * theta) + p.b * r * std::cos(theta) +
              constant_sign(branch) * p.epsilon,
          r3 * std::sin(3.0 * theta) + r2 * ae * std::sin(2.0 * theta) + p.b * r * std::sin(theta)};
}

double discriminant_delta(const JerkParams& p, double theta) {
  const double s2 = std::sin(2.0 * theta);
  return p.a * p.a * p.epsilon * p.epsilon * s2 * s2 -
         4.0 * p.b * std::sin(3.0 * theta) * std::sin(theta);
}

RCandidates r_candidates(const JerkParams& p, double theta) {
  const double A = std::sin(3.0 * theta);
  if (std::abs(A) < kSingularSin3) {
    throw DomainError(Errc::SingularAngle, "sin(3 theta) vanishes (alpha = 2/3)");
  }
  const double B = p.a * p.epsilon * std::sin(2.0 * theta);
  const double C = p.b * std::sin(theta);
  const double delta = discriminant_delta(p, theta);
  if (delta < 0.0) {
    throw DomainError(Errc::NegativeDiscriminant, "Delta < 0: no real r candidates");
  }
  // Cancellation-free form of (-B +- sqrt(Delta)) / (2A).
  const double sq = std::sqrt(delta);
  RCandidates out;
  if (B == 0.0 && C == 0.0) {
    out.r1 = 0.0;
    out.r2 = 0.0;
  } else {
    const double q = -0.5 * (B + std::copysign(sq, B));
    const double root_a = q / A;
    const double root_b = C / q;
    // r1 carries the +sqrt(Delta) sign of the textbook formula.
    const bool a_is_plus = B < 0.0 || (B == 0.0 && std::signbit(B));
    out.r1 = a_is_plus ? root_a : root_b;
    out.r2 = a_is_plus ? root_b : root_a;
  }
  out.product = out.r1 * out.r2;
  return out;
}

HopfSolution hopf_commensurate(double a, double b, double alpha, Branch branch) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  if (b == 0.0 || !std::isfinite(b)) throw std::invalid_argument("b must be a non-zero real");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");

  // theta = pi alpha / 2; multiples are evaluated through sin_pi/cos_pi so
  // alpha = 1 yields exact zeros.
  const double half = alpha / 2.0;
  const double s1 = sin_pi(half);
  const double s2 = sin_pi(2.0 * half);
  const double s3 = sin_pi(3.0 * half);
  const double c1 = cos_pi(half);
  const double c2 = cos_pi(2.0 * half);
  const double c3 = cos_pi(3.0 * half);

  if (std::abs(s3) < kHopfSingularSin3) {
    std::ostringstream os;
    os << "alpha = " << alpha << " is at the singular order 2/3 (|sin 3 theta| < "
       << kHopfSingularSin3 << ")";
    throw DomainError(Errc::SingularAngle, os.str());
  }
  const bool case_one = alpha > 2.0 / 3.0 && b > 0.0;
  const bool case_two = alpha < 2.0 / 3.0 && b < 0.0;
  if (!case_one && !case_two) {
    throw DomainError(Errc::CaseNotSatisfied,
                      "needs alpha > 2/3 with b > 0, or alpha < 2/3 with b < 0");
  }

  const double s = constant_sign(branch);
  // Both polar equations are linear in eps: re = A + eps B, im = C + eps D.
  // Eliminating eps gives (A D - B C) / r, a quadratic in r^2. When
  // sin 2 theta = 0 (alpha = 1) D vanishes and im alone fixes r.
  std::function<double(double)> reduced;
  double r_max = 0.0;
  if (s2 == 0.0) {
    reduced = [=](double r) { return r * r * s3 + b * s1; };
    r_max = 1.0 + std::abs(b * s1 / s3);
  } else {
    const double k4 = -a * s1;
    const double k2 = a * b * s1 - s * s3;
    const double k0 = -s * b * s1;
    reduced = [=](double r) {
      const double r2 = r * r;
      return (k4 * r2 + k2) * r2 + k0;
    };
    r_max = 1.0 + std::max(std::abs(k2), std::abs(k0)) / std::abs(k4);
  }

  const auto in_log = [&reduced](double u) { return reduced(std::exp(u)); };
  const auto root = detail::first_root(in_log, std::log(kRMin), std::log(r_max), kScanSamples);
  if (!root) {
    throw DomainError(Errc::NoPositiveRoot, "no sign change of the eliminated equation in r");
  }
  const double gamma = std::exp(*root);

  const double den = gamma * gamma * a * c2 + s;
  if (std::abs(den) < kDenominatorGuard) {
    throw DomainError(Errc::ExcludedAlpha, "gamma_H^2 a cos(2 theta) -+ 2 vanishes");
  }
  const double num = -(gamma * gamma * gamma * c3 + gamma * b * c1);
  HopfSolution out;
  out.gamma_H = gamma;
  out.epsilon_H = num / den + 0.0;
  out.theta = std::numbers::pi * half;
  out.branch = branch;
  const PolarPair res = char_eval_polar_comm({a, b, out.epsilon_H}, branch, gamma, out.theta);
  out.residual_re = res.re;
  out.residual_im = res.im;
  if (!(std::abs(res.re) < kResidualTol && std::abs(res.im) < kResidualTol)) {
    std::ostringstream os;
    os.precision(3);
    os << "characteristic residuals (" << res.re << ", " << res.im << ") exceed " << kResidualTol;
    throw DomainError(Errc::ResidualTooLarge, os.str());
  }
  return out;
}

std::vector<double> excluded_alphas(double a, double gamma) {
  const double c = 2.0 / (a * gamma * gamma);
  std::vector<double> out;
  if (!(c <= 1.0)) return out;
  for (double v : {std::acos(c) / std::numbers::pi, std::acos(-c) / std::numbers::pi}) {
    if (v > 0.0 && v <= 1.0) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fjerk::stability
