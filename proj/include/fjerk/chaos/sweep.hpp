#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fjerk/chaos/attractor.hpp"
#include "fjerk/chaos/lyapunov.hpp"

namespace fjerk::chaos {

struct SweepOptions {
  bool with_lyapunov = false;
  std::size_t renorm_every = kDefaultRenormEvery;
  double transient = kDefaultTransient;
  /// 0 picks FJERK_THREADS, else the hardware concurrency.
  std::size_t threads = 0;
};

/// Sweep defaults: 300 time units with a 50-unit memory window.
solver::SolveConfig default_sweep_config();

struct SweepPoint {
  double epsilon = 0.0;
  bool divergent = false;
  /// Failure message for divergent or otherwise failed points.
  std::string error;
  Extrema extrema;
  std::optional<LyapunovSpectrum> spectrum;
  AttractorClass attractor;
};

struct SweepResult {
  std::vector<double> epsilon_grid;
  std::vector<SweepPoint> points;
  JerkParams params;
  OrderSpec orders = OrderSpec::commensurate(1.0);
  solver::SolveConfig config;
  SweepOptions options;
};

/// Uniform grid over [eps_min, eps_max]; n_points = 1 gives {eps_min}.
std::vector<double> epsilon_grid(double eps_min, double eps_max, std::size_t n_points);

/// Worker count from FJERK_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t default_threads();

/// Integrates every grid point independently on a pool of threads and
/// collects extrema (and spectra on request). Results are ordered by
/// epsilon and do not depend on the worker count. Per-point failures are
/// recorded in the point; invalid arguments throw.
SweepResult sweep_bifurcation(const JerkParams& params_base, const OrderSpec& orders,
                              double eps_min, double eps_max, std::size_t n_points,
                              const solver::SolveConfig& cfg, const SweepOptions& options = {});

}  // namespace fjerk::chaos
