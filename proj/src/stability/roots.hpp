#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include <boost/math/tools/toms748_solve.hpp>

namespace fjerk::stability::detail {

/// Refines a root of f inside [lo, hi] where f(lo) and f(hi) differ in sign.
template <class F>
double refine_root(F&& f, double lo, double hi, double f_lo, double f_hi) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

/// Scans f on `samples` uniform points of [lo, hi] and refines the first
/// sign change found.
template <class F>
std::optional<double> first_root(F&& f, double lo, double hi, int samples) {
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) return lo;
  for (int i = 1; i <= samples; ++i) {
    const double x = i == samples ? hi : lo + (hi - lo) * static_cast<double>(i) / samples;
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::signbit(fx) != std::signbit(f_prev)) return refine_root(f, x_prev, x, f_prev, fx);
    x_prev = x;
    f_prev = fx;
  }
  return std::nullopt;
}

}  // namespace fjerk::stability::detail
