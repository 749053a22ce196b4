#include "fjerk/stability/incommensurate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fjerk/core/errors.hpp"
#include "fjerk/core/types.hpp"
#include "roots.hpp"

namespace fjerk::stability {

namespace {

constexpr double kDenominatorGuard = 1e-10;
constexpr double kZeroCoefficient = 1e-14;
constexpr double kResidualTol = 1e-8;
constexpr double kScaledRootTol = 1e-9;
constexpr std::int64_t kLogFormThreshold = 300;
constexpr int kScanSamples = 4096;

// sin and cos of k * pi / (2M).
double sin_k(std::int64_t k, std::int64_t M) {
  return sin_pi(static_cast<double>(k) / static_cast<double>(2 * M));
}
double cos_k(std::int64_t k, std::int64_t M) {
  return cos_pi(static_cast<double>(k) / static_cast<double>(2 * M));
}

struct Term {
  std::int64_t k;
  double coef;
};

PolarPair sum_terms(const std::array<Term, 4>& terms, std::int64_t M, double r, bool log_form) {
  PolarPair out;
  if (!log_form) {
    for (const auto& t : terms) {
      const double mag = t.coef * std::pow(r, static_cast<double>(t.k));
      out.re += mag * cos_k(t.k, M);
      out.im += mag * sin_k(t.k, M);
    }
    return out;
  }
  const double lr = std::log(r);
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.coef != 0.0) lmax = std::max(lmax, static_cast<double>(t.k) * lr + std::log(std::abs(t.coef)));
  }
  if (!std::isfinite(lmax)) return out;
  for (const auto& t : terms) {
    if (t.coef == 0.0) continue;
    const double rel = std::copysign(
        std::exp(static_cast<double>(t.k) * lr + std::log(std::abs(t.coef)) - lmax), t.coef);
    out.re += rel * cos_k(t.k, M);
    out.im += rel * sin_k(t.k, M);
  }
  const double scale = std::exp(lmax);
  out.re *= scale;
  out.im *= scale;
  return out;
}

double find_gamma(const PseudoPoly& poly, const SignCaseReport& report) {
  const auto& terms = poly.terms;
  const double lead = std::abs(terms.front().coefficient);
  const double low = std::abs(terms.back().coefficient);
  double max_not_lead = 0.0;
  double max_not_low = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double c = std::abs(terms[i].coefficient);
    if (i != 0) max_not_lead = std::max(max_not_lead, c);
    if (i + 1 != terms.size()) max_not_low = std::max(max_not_low, c);
  }
  // Cauchy bounds for the roots of the polynomial and of its reversal.
  const double u_hi = std::log(1.0 + max_not_lead / lead);
  const double u_lo = std::log(low / (low + max_not_low));
  const auto f = [&poly](double u) { return poly.evaluate_scaled(u); };

  double u = 0.0;
  if (report.positive_root_guaranteed) {
    const double f_lo = f(u_lo);
    const double f_hi = f(u_hi);
    if (std::signbit(f_lo) == std::signbit(f_hi) && f_lo != 0.0 && f_hi != 0.0) {
      throw DomainError(Errc::NoPositiveRoot,
                        "single sign inversion but no sign change between the Cauchy bounds");
    }
    u = detail::refine_root(f, u_lo, u_hi, f_lo, f_hi);
  } else {
    const auto root = detail::first_root(f, u_lo, u_hi, kScanSamples);
    if (!root) throw DomainError(Errc::NoPositiveRoot, "no positive root of the eliminated equation");
    u = *root;
  }
  if (!(std::abs(f(u)) < kScaledRootTol)) {
    throw DomainError(Errc::NoPositiveRoot, "root refinement did not converge");
  }
  return std::exp(u);
}

}  // namespace

double PseudoPoly::evaluate(double r) const {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coefficient * std::pow(r, static_cast<double>(t.exponent));
  return sum;
}

double PseudoPoly::evaluate_scaled(double u) const {
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    lmax = std::max(lmax, static_cast<double>(t.exponent) * u + std::log(std::abs(t.coefficient)));
  }
  double sum = 0.0;
  for (const auto& t : terms) {
    const double l = static_cast<double>(t.exponent) * u + std::log(std::abs(t.coefficient));
    sum += std::copysign(std::exp(l - lmax), t.coefficient);
  }
  return sum;
}

PolarPair char_eval_polar_incomm(const JerkParams& params, const ReducedOrders& red, Branch branch,
                                 double r) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  const std::array<Term, 4> terms{{{red.total(), 1.0},
                                   {red.p + red.q, params.a * params.epsilon},
                                   {red.p, params.b},
                                   {0, constant_sign(branch) * params.epsilon}}};
  return sum_terms(terms, red.M, r, red.total() > kLogFormThreshold);
}

double epsilon_H_incomm(double a, double b, const ReducedOrders& red, double gamma, Branch branch) {
  const std::int64_t n3 = red.total();
  const std::int64_t n2 = red.p + red.q;
  const auto g = static_cast<double>(gamma);
  const double den = std::pow(g, static_cast<double>(n2)) * cos_k(n2, red.M) * a + constant_sign(branch);
  if (!(std::abs(den) > kDenominatorGuard)) {
    throw DomainError(Errc::ExcludedDenominator, "gamma^(p+q) a cos((p+q) theta) -+ 2 vanishes");
  }
  const double num = -(std::pow(g, static_cast<double>(n3)) * cos_k(n3, red.M) +
                       std::pow(g, static_cast<double>(red.p)) * cos_k(red.p, red.M) * b);
  return num / den + 0.0;
}

PseudoPoly aa4_polynomial(double a, double b, const ReducedOrders& red, Branch branch) {
  const std::int64_t p = red.p;
  const std::int64_t q = red.q;
  const std::int64_t m = red.m;
  const std::int64_t M = red.M;
  const double two_sigma = constant_sign(branch);
  PseudoPoly poly;
  poly.theta = red.lift_angle();
  if (p == m) {
    poly.terms = {{2 * p + 2 * q, a * sin_k(p, M)},
                  {p + q, -a * b * sin_k(q, M) + two_sigma * sin_k(2 * p + q, M)},
                  {0, two_sigma * b * sin_k(p, M)}};
  } else {
    poly.terms = {{2 * p + 2 * q + m, a * sin_k(m, M)},
                  {2 * p + q, -a * b * sin_k(q, M)},
                  {p + q + m, two_sigma * sin_k(p + q + m, M)},
                  {p, two_sigma * b * sin_k(p, M)}};
    std::sort(poly.terms.begin(), poly.terms.end(),
              [](const Monomial& x, const Monomial& y) { return x.exponent > y.exponent; });
  }
  return poly;
}

SignCaseReport sign_change_analysis(const PseudoPoly& poly, const ReducedOrders& red) {
  if (poly.terms.empty()) throw std::invalid_argument("empty polynomial");
  const std::int64_t n3 = red.total();
  SignCaseReport rep;
  if (red.p > red.m) {
    rep.case_label = SignCase::I;
  } else if (red.p < red.m) {
    rep.case_label = SignCase::II;
    rep.subcase = n3 < 2 * red.M ? Subcase::i : (n3 == 2 * red.M ? Subcase::iii : Subcase::ii);
  } else {
    rep.case_label = SignCase::III;
  }
  if (red.p >= red.m) {
    rep.statement_case = StatementCase::I;
  } else if (n3 <= 2 * red.M) {
    rep.statement_case = StatementCase::II;
  }

  for (const auto& t : poly.terms) {
    if (!(std::abs(t.coefficient) >= kZeroCoefficient)) {
      std::ostringstream os;
      os << "coefficient of r^" << t.exponent << " is " << t.coefficient << " (ambiguous sign)";
      throw DomainError(Errc::ZeroCoefficient, os.str());
    }
    rep.sign_sequence.push_back(t.coefficient > 0.0 ? 1 : -1);
  }
  for (std::size_t i = 1; i < rep.sign_sequence.size(); ++i) {
    if (rep.sign_sequence[i] != rep.sign_sequence[i - 1]) ++rep.inversions;
  }
  rep.positive_root_guaranteed = rep.inversions == 1;
  return rep;
}

double gamma_H_incomm(double a, double b, const ReducedOrders& red, Branch branch) {
  const PseudoPoly poly = aa4_polynomial(a, b, red, branch);
  return find_gamma(poly, sign_change_analysis(poly, red));
}

HopfSolution hopf_incommensurate(double a, double b, const OrderSpec& orders, Branch branch) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  if (!(b > 0.0)) throw DomainError(Errc::CaseNotSatisfied, "the incommensurate analysis needs b > 0");
  const ReducedOrders red = reduce_orders(orders);
  const PseudoPoly poly = aa4_polynomial(a, b, red, branch);
  const SignCaseReport rep = sign_change_analysis(poly, red);
  if (!rep.statement_case) {
    std::ostringstream os;
    os << "m > p with (p+q+m) theta > pi (p=" << red.p << ", q=" << red.q << ", m=" << red.m
       << ", M=" << red.M << ")";
    throw DomainError(Errc::CaseNotSatisfied, os.str());
  }
  HopfSolution out;
  out.gamma_H = find_gamma(poly, rep);
  out.epsilon_H = epsilon_H_incomm(a, b, red, out.gamma_H, branch);
  out.theta = red.lift_angle();
  out.branch = branch;
  const PolarPair res = char_eval_polar_incomm({a, b, out.epsilon_H}, red, branch, out.gamma_H);
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

std::string_view to_string(SignCase c) noexcept {
  switch (c) {
    case SignCase::I: return "I";
    case SignCase::II: return "II";
    case SignCase::III: return "III";
  }
  return "?";
}

std::string_view to_string(Subcase c) noexcept {
  switch (c) {
    case Subcase::i: return "i";
    case Subcase::ii: return "ii";
    case Subcase::iii: return "iii";
  }
  return "?";
}

}  // namespace fjerk::stability
