#include "fjerk/chaos/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "fjerk/core/errors.hpp"

namespace fjerk::chaos {

solver::SolveConfig default_sweep_config() {
  solver::SolveConfig cfg;
  cfg.memory = solver::MemoryPolicy::short_memory(50.0);
  return cfg;
}

std::vector<double> epsilon_grid(double eps_min, double eps_max, std::size_t n_points) {
  if (n_points < 1) throw std::invalid_argument("a sweep needs at least one point");
  if (!std::isfinite(eps_min) || !std::isfinite(eps_max)) {
    throw std::invalid_argument("epsilon range must be finite");
  }
  if (n_points == 1) return {eps_min};
  if (!(eps_max > eps_min)) throw std::invalid_argument("epsilon range must be ascending");
  std::vector<double> grid(n_points);
  const double step = (eps_max - eps_min) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) grid[i] = eps_min + step * static_cast<double>(i);
  grid.back() = eps_max;
  return grid;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("FJERK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

SweepPoint failed_point(double eps, const char* what) {
  SweepPoint pt;
  pt.epsilon = eps;
  pt.divergent = true;
  pt.error = what;
  pt.attractor = divergent_attractor();
  return pt;
}

SweepPoint run_point(const JerkParams& base, double eps, const OrderSpec& orders,
                     const solver::SolveConfig& cfg, const SweepOptions& opt) {
  SweepPoint pt;
  pt.epsilon = eps;
  JerkParams params = base;
  params.epsilon = eps;
  try {
    if (opt.with_lyapunov) {
      LyapunovRun run = lyapunov_run(solver::jerk_system(params), orders, cfg, opt.renorm_every,
                                     opt.transient);
      pt.extrema = extract_extrema(run.trajectory, opt.transient);
      pt.spectrum = run.spectrum;
    } else {
      pt.extrema = extract_extrema(solver::integrate(params, orders, cfg), opt.transient);
    }
    pt.attractor = classify_attractor(pt.extrema, pt.spectrum);
  } catch (const DomainError& e) {
    pt = failed_point(eps, e.what());
  }
  return pt;
}

}  // namespace

SweepResult sweep_bifurcation(const JerkParams& params_base, const OrderSpec& orders,
                              double eps_min, double eps_max, std::size_t n_points,
                              const solver::SolveConfig& cfg, const SweepOptions& options) {
  cfg.validate();
  if (options.with_lyapunov && !(cfg.t_end >= 100.0)) {
    throw std::invalid_argument("Lyapunov spectra need t_end >= 100");
  }
  SweepResult out;
  out.epsilon_grid = epsilon_grid(eps_min, eps_max, n_points);
  out.params = params_base;
  out.orders = orders;
  out.config = cfg;
  out.options = options;
  out.points.resize(out.epsilon_grid.size());

  const std::size_t workers =
      std::min(options.threads > 0 ? options.threads : default_threads(), out.points.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < out.points.size(); i = next++) {
      out.points[i] = run_point(params_base, out.epsilon_grid[i], orders, cfg, options);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace fjerk::chaos
