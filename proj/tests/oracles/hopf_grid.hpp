#pragma once

// Commensurate Hopf point by a different route: the imaginary equation fixes
// eps as a function of r, the real part is then scanned over a log grid in r
// and the first sign change bisected, all in 50-digit arithmetic.

#include <cmath>
#include <optional>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

struct HopfPoint {
  double gamma;
  double epsilon;
};

// constant_sign is -2 for the branch at x = +eps and +2 for x = -eps.
inline std::optional<HopfPoint> hopf_grid(double a, double b, double alpha, double constant_sign) {
  using mp = boost::multiprecision::cpp_bin_float_50;
  const mp th = boost::math::constants::pi<mp>() * mp(alpha) / 2;
  const mp s1 = sin(th), s2 = sin(2 * th), s3 = sin(3 * th);
  const mp c1 = cos(th), c2 = cos(2 * th), c3 = cos(3 * th);
  const mp A = a, B = b, S = constant_sign;
  const auto eps_of = [&](const mp& r) { return -(r * r * r * s3 + B * r * s1) / (A * r * r * s2); };
  const auto F = [&](const mp& r) {
    const mp e = eps_of(r);
    return r * r * r * c3 + A * e * r * r * c2 + B * r * c1 + S * e;
  };
  const int n = 20000;
  const mp lo = log(mp(1e-3)), hi = log(mp(100));
  mp r_prev = exp(lo);
  mp f_prev = F(r_prev);
  for (int i = 1; i <= n; ++i) {
    const mp r = exp(lo + (hi - lo) * i / n);
    const mp f = F(r);
    if ((f < 0) != (f_prev < 0)) {
      mp x0 = r_prev, x1 = r, f0 = f_prev;
      for (int it = 0; it < 200; ++it) {
        const mp xm = (x0 + x1) / 2;
        const mp fm = F(xm);
        if ((fm < 0) == (f0 < 0)) {
          x0 = xm;
          f0 = fm;
        } else {
          x1 = xm;
        }
      }
      const mp g = (x0 + x1) / 2;
      return HopfPoint{static_cast<double>(g), static_cast<double>(eps_of(g))};
    }
    r_prev = r;
    f_prev = f;
  }
  return std::nullopt;
}

}  // namespace oracle
