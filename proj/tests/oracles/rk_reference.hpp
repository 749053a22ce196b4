#pragma once

// Integer-order reference trajectory from an adaptive Dormand-Prince 5(4)
// integrator with tight tolerances, sampled on a uniform grid.

#include <array>
#include <functional>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace oracle {

using State3 = std::array<double, 3>;

inline std::vector<State3> dopri5_samples(const std::function<State3(const State3&)>& rhs,
                                          State3 x0, double dt, std::size_t n_samples) {
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State3>());
  std::vector<State3> out;
  out.reserve(n_samples + 1);
  std::vector<double> times(n_samples + 1);
  for (std::size_t i = 0; i <= n_samples; ++i) times[i] = dt * static_cast<double>(i);
  odeint::integrate_times(
      stepper, [&rhs](const State3& x, State3& dx, double) { dx = rhs(x); }, x0, times.begin(),
      times.end(), dt, [&out](const State3& x, double) { out.push_back(x); });
  return out;
}

}  // namespace oracle
