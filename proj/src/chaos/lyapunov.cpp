#include "fjerk/chaos/lyapunov.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fjerk::chaos {

LyapunovSpectrum spectrum_from_log(const solver::TangentLog& log, double t_end, double transient) {
  if (!(transient >= 0.0 && transient < 1.0)) {
    throw std::invalid_argument("transient fraction must lie in [0, 1)");
  }
  const double t_cut = transient * t_end;
  // Averaging starts at the last renormalization at or before the cut.
  std::size_t first = 0;
  double t_start = 0.0;
  for (std::size_t k = 0; k < log.renorm_times.size(); ++k) {
    if (log.renorm_times[k] <= t_cut) {
      first = k + 1;
      t_start = log.renorm_times[k];
    }
  }
  LyapunovSpectrum out;
  if (first >= log.renorm_times.size()) return out;

  std::array<double, 3> sum{};
  std::vector<double> running;
  running.reserve(log.renorm_times.size() - first);
  for (std::size_t k = first; k < log.renorm_times.size(); ++k) {
    for (std::size_t c = 0; c < 3; ++c) sum[c] += log.log_norms[k][c];
    running.push_back(sum[0] / (log.renorm_times[k] - t_start));
  }
  out.t_span = log.renorm_times.back() - t_start;
  out.renorm_count = log.renorm_times.size() - first;
  for (std::size_t c = 0; c < 3; ++c) out.exponents[c] = sum[c] / out.t_span;
  std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());

  const std::size_t tail = running.size() - running.size() / 4;
  const auto [lo, hi] = std::minmax_element(running.begin() + static_cast<std::ptrdiff_t>(
                                                                  std::min(tail, running.size() - 1)),
                                            running.end());
  out.drift = *hi - *lo;
  out.converged = out.drift < kConvergedDrift;
  return out;
}

LyapunovRun lyapunov_run(const solver::System& system, const OrderSpec& orders,
                         const solver::SolveConfig& cfg, std::size_t renorm_every, double transient) {
  if (!(cfg.t_end >= 100.0)) throw std::invalid_argument("Lyapunov spectra need t_end >= 100");
  auto [traj, log] = solver::integrate_with_tangent(system, orders, cfg, renorm_every);
  LyapunovSpectrum spec = spectrum_from_log(log, cfg.t_end, transient);
  return {std::move(traj), spec};
}

LyapunovSpectrum lyapunov_spectrum(const JerkParams& params, const OrderSpec& orders,
                                   const solver::SolveConfig& cfg, std::size_t renorm_every,
                                   double transient) {
  return lyapunov_run(solver::jerk_system(params), orders, cfg, renorm_every, transient).spectrum;
}

}  // namespace fjerk::chaos
