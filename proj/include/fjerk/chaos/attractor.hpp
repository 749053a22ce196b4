#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fjerk/chaos/lyapunov.hpp"
#include "fjerk/solver/integrator.hpp"

namespace fjerk::chaos {

/// Local extrema of x after the transient, with the sample range of x over
/// the same interval.
struct Extrema {
  std::vector<double> maxima;
  std::vector<double> minima;
  double x_min = 0.0;
  double x_max = 0.0;

  double range() const noexcept { return x_max - x_min; }
};

/// Interior extrema by 3-point comparison, refined through the vertex of the
/// parabola through the three samples and clamped to [x_min, x_max]. Throws
/// DomainError(EmptyAfterTransient) when fewer than 3 samples remain.
Extrema extract_extrema(const solver::Trajectory& traj, double transient_fraction);

/// Number of groups left after sorting `values` and merging neighbours that
/// are closer than `tol`.
std::size_t count_clusters(std::vector<double> values, double tol);

enum class AttractorKind { FixedPoint, Periodic, Chaotic, Divergent };

struct AttractorClass {
  AttractorKind kind = AttractorKind::FixedPoint;
  /// Maxima clusters (Periodic carries its period here).
  std::size_t clusters = 0;

  std::string label() const;
};

inline constexpr double kClusterTolerance = 1e-3;
inline constexpr double kFlatRange = 1e-6;
inline constexpr double kChaoticLambda = 0.005;
inline constexpr std::size_t kChaoticClusters = 32;

/// FixedPoint for no maxima or a range below 1e-6, Chaotic for lambda_1 >
/// 0.005 or more than 32 maxima clusters (tolerance 1e-3 of the range),
/// Periodic(n) otherwise.
AttractorClass classify_attractor(const Extrema& extrema,
                                  const std::optional<LyapunovSpectrum>& spectrum = std::nullopt);

/// Marker for a run that left the finite range.
AttractorClass divergent_attractor();

}  // namespace fjerk::chaos
