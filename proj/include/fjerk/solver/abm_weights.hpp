#pragma once

#include <cstddef>
#include <vector>

namespace fjerk::solver {

/// Product-integration weights of the fractional Adams-Bashforth-Moulton
/// scheme for the kernel (t - s)^(alpha - 1) / Gamma(alpha). All tables are
/// indexed by lag k = n - j and already carry the h^alpha / Gamma scale, so a
/// step only needs dot products against the stored right-hand sides.
struct AbmWeights {
  double alpha = 1.0;
  double h = 0.0;
  /// Rectangle rule: predictor[k] = h^a / Gamma(a+1) * ((k+1)^a - k^a).
  std::vector<double> predictor;
  /// Trapezoid rule, interior history points (j >= 1):
  /// corrector[k] = h^a / Gamma(a+2) * ((k+2)^(a+1) - 2 (k+1)^(a+1) + k^(a+1)).
  std::vector<double> corrector;
  /// Trapezoid weight of the initial point f_0 when stepping from n to n+1:
  /// corrector_start[n] = h^a / Gamma(a+2) * (n^(a+1) - (n - a)(n+1)^a).
  std::vector<double> corrector_start;
  /// Weight of the predicted right-hand side f(t_{n+1}, y^P).
  double corrector_self = 0.0;
};

/// Builds the tables for n steps. Throws std::invalid_argument unless
/// 0 < alpha <= 1 and h > 0.
AbmWeights abm_weights(double alpha, std::size_t n, double h);

}  // namespace fjerk::solver
