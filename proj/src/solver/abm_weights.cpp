#include "fjerk/solver/abm_weights.hpp"

#include <cmath>
#include <stdexcept>

namespace fjerk::solver {

namespace {

// (k+1)^a - k^a without cancellation for large k.
double first_difference(double a, double k) {
  if (k == 0.0) return 1.0;
  return std::pow(k, a) * std::expm1(a * std::log1p(1.0 / k));
}

// (k+2)^c - 2 (k+1)^c + k^c with c = a + 1.
double second_difference(double c, double k) {
  if (k == 0.0) return std::pow(2.0, c) - 2.0;
  const double e1 = std::expm1(c * std::log1p(1.0 / k));
  const double e2 = std::expm1(c * std::log1p(2.0 / k));
  return std::pow(k, c) * (e2 - 2.0 * e1);
}

// n^(a+1) - (n - a)(n+1)^a.
double start_weight(double a, double n) {
  if (n == 0.0) return a;
  const double e = std::expm1(a * std::log1p(1.0 / n));
  return std::pow(n, a) * (a * (1.0 + e) - n * e);
}

}  // namespace

AbmWeights abm_weights(double alpha, std::size_t n, double h) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(h > 0.0)) throw std::invalid_argument("step size h must be positive");

  AbmWeights w;
  w.alpha = alpha;
  w.h = h;
  const double ha = std::pow(h, alpha);
  const double pred_scale = ha / std::tgamma(alpha + 1.0);
  const double corr_scale = ha / std::tgamma(alpha + 2.0);
  w.corrector_self = corr_scale;

  w.predictor.resize(n);
  w.corrector.resize(n);
  w.corrector_start.resize(n);
  const bool integer_order = alpha == 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    if (integer_order) {
      w.predictor[i] = pred_scale;
      w.corrector[i] = 2.0 * corr_scale;
      w.corrector_start[i] = corr_scale;
    } else {
      w.predictor[i] = pred_scale * first_difference(alpha, k);
      w.corrector[i] = corr_scale * second_difference(alpha + 1.0, k);
      w.corrector_start[i] = corr_scale * start_weight(alpha, k);
    }
  }
  return w;
}

}  // namespace fjerk::solver
