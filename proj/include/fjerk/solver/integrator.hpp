#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fjerk/core/model.hpp"
#include "fjerk/core/orders.hpp"
#include "fjerk/core/types.hpp"

namespace fjerk::solver {

/// Full keeps the complete history convolution. With a window only the most
/// recent `window` time units are convolved point by point; older history
/// enters through 32-step blocks (mean and slope per block), so the cost per
/// step is about window/h + t/(32 h) instead of t/h.
struct MemoryPolicy {
  std::optional<double> window;

  static MemoryPolicy full() { return {}; }
  static MemoryPolicy short_memory(double window) { return {window}; }
  bool is_full() const noexcept { return !window.has_value(); }
};

struct SolveConfig {
  double h = 0.005;
  double t_end = 300.0;
  MemoryPolicy memory = MemoryPolicy::full();
  Vec3 initial_state{0.0, 0.0, 0.0};

  /// Throws std::invalid_argument when h <= 0, t_end < h or the memory
  /// window is shorter than 10 h.
  void validate() const;
  std::size_t steps() const;
  /// Number of history points the convolution may see.
  std::size_t memory_steps() const;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec3> states;
  SolveConfig config;
  OrderSpec orders = OrderSpec::commensurate(1.0);
};

/// Log stretch factors recorded at every Gram-Schmidt step.
struct TangentLog {
  std::vector<double> renorm_times;
  std::vector<Vec3> log_norms;
  std::size_t renorm_every = 1;
  /// Largest |Q^T Q - I| entry seen after any renormalization.
  double max_orthonormality_error = 0.0;
};

/// Pluggable right-hand side. `jacobian` is only needed for tangent
/// propagation.
struct System {
  std::function<Vec3(const Vec3&)> rhs;
  std::function<Mat3(const Vec3&)> jacobian;
};

System jerk_system(const JerkParams& params);

/// One-pass fractional Adams-Bashforth-Moulton integration; equation i uses
/// the weights of its own order. Throws DivergenceError when a state turns
/// non-finite.
Trajectory integrate(const System& system, const OrderSpec& orders, const SolveConfig& cfg);
Trajectory integrate(const JerkParams& params, const OrderSpec& orders, const SolveConfig& cfg);

/// Co-integrates three tangent vectors under the Jacobian along the computed
/// trajectory and re-orthonormalizes them every `renorm_every` steps.
/// Because the variational equation is linear, each renormalization is
/// applied to the whole stored tangent history, which keeps the fractional
/// memory consistent with the rescaled basis.
std::pair<Trajectory, TangentLog> integrate_with_tangent(const System& system,
                                                         const OrderSpec& orders,
                                                         const SolveConfig& cfg,
                                                         std::size_t renorm_every);
std::pair<Trajectory, TangentLog> integrate_with_tangent(const JerkParams& params,
                                                         const OrderSpec& orders,
                                                         const SolveConfig& cfg,
                                                         std::size_t renorm_every);

}  // namespace fjerk::solver
