#pragma once

#include <array>
#include <cstddef>

#include "fjerk/solver/integrator.hpp"

namespace fjerk::chaos {

inline constexpr double kDefaultTransient = 0.3;
inline constexpr std::size_t kDefaultRenormEvery = 10;

struct LyapunovSpectrum {
  /// Descending.
  std::array<double, 3> exponents{};
  /// Length of the averaging interval after the transient.
  double t_span = 0.0;
  std::size_t renorm_count = 0;
  /// Spread of the running lambda_1 estimate over the last quarter of the
  /// averaging interval.
  double drift = 0.0;
  bool converged = false;
};

inline constexpr double kConvergedDrift = 0.005;

/// Time-averaged log stretch factors of the Gram-Schmidt steps recorded
/// after `transient` * t_end.
LyapunovSpectrum spectrum_from_log(const solver::TangentLog& log, double t_end, double transient);

struct LyapunovRun {
  solver::Trajectory trajectory;
  LyapunovSpectrum spectrum;
};

/// Requires t_end >= 100. Divergence propagates as DivergenceError; a
/// spectrum that has not settled is returned with converged = false.
LyapunovRun lyapunov_run(const solver::System& system, const OrderSpec& orders,
                         const solver::SolveConfig& cfg, std::size_t renorm_every = kDefaultRenormEvery,
                         double transient = kDefaultTransient);

LyapunovSpectrum lyapunov_spectrum(const JerkParams& params, const OrderSpec& orders,
                                   const solver::SolveConfig& cfg,
                                   std::size_t renorm_every = kDefaultRenormEvery,
                                   double transient = kDefaultTransient);

}  // namespace fjerk::chaos
