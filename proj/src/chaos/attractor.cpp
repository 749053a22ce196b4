#include "fjerk/chaos/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fjerk/core/errors.hpp"

namespace fjerk::chaos {

Extrema extract_extrema(const solver::Trajectory& traj, double transient_fraction) {
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) {
    throw std::invalid_argument("transient fraction must lie in [0, 1)");
  }
  const std::size_t n = traj.states.size();
  const auto first = static_cast<std::size_t>(
      std::ceil(transient_fraction * static_cast<double>(n > 0 ? n - 1 : 0)));
  if (n < first + 3) {
    throw DomainError(Errc::EmptyAfterTransient, "fewer than 3 samples after the transient");
  }
  Extrema out;
  out.x_min = out.x_max = traj.states[first][0];
  for (std::size_t i = first; i < n; ++i) {
    out.x_min = std::min(out.x_min, traj.states[i][0]);
    out.x_max = std::max(out.x_max, traj.states[i][0]);
  }
  for (std::size_t i = first + 1; i + 1 < n; ++i) {
    const double a = traj.states[i - 1][0];
    const double b = traj.states[i][0];
    const double c = traj.states[i + 1][0];
    const bool is_max = b > a && b >= c;
    const bool is_min = b < a && b <= c;
    if (!is_max && !is_min) continue;
    const double curv = a - 2.0 * b + c;
    double v = curv != 0.0 ? b - (c - a) * (c - a) / (8.0 * curv) : b;
    v = std::clamp(v, out.x_min, out.x_max);
    (is_max ? out.maxima : out.minima).push_back(v);
  }
  return out;
}

std::size_t count_clusters(std::vector<double> values, double tol) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  std::size_t count = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > tol) ++count;
  }
  return count;
}

std::string AttractorClass::label() const {
  switch (kind) {
    case AttractorKind::FixedPoint: return "fixed-point";
    case AttractorKind::Periodic: return "periodic(" + std::to_string(clusters) + ")";
    case AttractorKind::Chaotic: return "chaotic";
    case AttractorKind::Divergent: return "divergent";
  }
  return "?";
}

AttractorClass classify_attractor(const Extrema& extrema,
                                  const std::optional<LyapunovSpectrum>& spectrum) {
  AttractorClass out;
  const double range = extrema.range();
  if (extrema.maxima.empty() || !(range >= kFlatRange)) return out;
  out.clusters = count_clusters(extrema.maxima, kClusterTolerance * range);
  const bool positive = spectrum && spectrum->exponents[0] > kChaoticLambda;
  out.kind = positive || out.clusters > kChaoticClusters ? AttractorKind::Chaotic
                                                         : AttractorKind::Periodic;
  return out;
}

AttractorClass divergent_attractor() { return {AttractorKind::Divergent, 0}; }

}  // namespace fjerk::chaos
