#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fjerk/core/model.hpp"
#include "fjerk/core/orders.hpp"
#include "fjerk/stability/commensurate.hpp"

namespace fjerk::stability {

struct Monomial {
  std::int64_t exponent = 0;
  double coefficient = 0.0;
};

/// Sparse polynomial in r with strictly descending integer exponents.
struct PseudoPoly {
  std::vector<Monomial> terms;
  double theta = 0.0;

  double evaluate(double r) const;
  /// Value at r = e^u divided by the largest term magnitude; keeps the sign
  /// and stays O(1) for exponents in the hundreds.
  double evaluate_scaled(double u) const;
};

/// Real and imaginary parts of
///   mu^(p+q+m) + a eps mu^(p+q) + b mu^p -+ 2 eps   at mu = r e^{i pi/(2M)}.
/// Terms are combined in log-magnitude form once p+q+m exceeds 300.
PolarPair char_eval_polar_incomm(const JerkParams& params, const ReducedOrders& reduced,
                                 Branch branch, double r);

/// eps_H from the real part at r = gamma. Throws
/// DomainError(ExcludedDenominator) when the denominator is below 1e-10.
double epsilon_H_incomm(double a, double b, const ReducedOrders& reduced, double gamma,
                        Branch branch);

/// The eliminated equation in r obtained by substituting eps_H into the
/// imaginary part. For p = m the coinciding exponents are merged and the
/// common factor r^p removed.
PseudoPoly aa4_polynomial(double a, double b, const ReducedOrders& reduced,
                          Branch branch = Branch::Plus);

enum class SignCase { I, II, III };       // p > m, p < m, p = m
enum class Subcase { i, ii, iii };        // (p+q+m) theta below, above or at pi
enum class StatementCase { I, II };       // p >= m;  m > p with (p+q+m) theta <= pi

struct SignCaseReport {
  SignCase case_label = SignCase::I;
  std::optional<Subcase> subcase;
  /// +1 / -1 per coefficient, descending exponent.
  std::vector<int> sign_sequence;
  int inversions = 0;
  bool positive_root_guaranteed = false;
  /// Which case of the theorem statement applies, if any.
  std::optional<StatementCase> statement_case;
};

/// Throws DomainError(ZeroCoefficient) when a coefficient is below 1e-14 in
/// magnitude.
SignCaseReport sign_change_analysis(const PseudoPoly& poly, const ReducedOrders& reduced);

/// Smallest positive root of aa4_polynomial (the unique one when the sign
/// sequence has a single inversion).
double gamma_H_incomm(double a, double b, const ReducedOrders& reduced,
                      Branch branch = Branch::Plus);

/// gamma_H is reported in the lifted variable mu; for p = q = m it relates
/// to the commensurate modulus by gamma_comm = gamma_H^p. theta is pi/(2M).
HopfSolution hopf_incommensurate(double a, double b, const OrderSpec& orders, Branch branch);

std::string_view to_string(SignCase c) noexcept;
std::string_view to_string(Subcase c) noexcept;

}  // namespace fjerk::stability
