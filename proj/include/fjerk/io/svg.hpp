#pragma once

#include <string>
#include <utility>

#include "fjerk/chaos/sweep.hpp"
#include "fjerk/solver/integrator.hpp"

namespace fjerk::io {

enum class Plane { XY, XZ, YZ };

Plane parse_plane(const std::string& s);
std::string to_string(Plane p);

/// Affine map of a data interval onto a pixel interval. A degenerate data
/// interval is widened so the map stays strictly monotone.
class AxisMap {
 public:
  AxisMap(double lo, double hi, double px_lo, double px_hi);
  double operator()(double v) const noexcept { return px_lo_ + (v - lo_) * scale_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_, hi_, px_lo_, scale_;
};

/// One circle per (epsilon, extremum) pair; divergent points are skipped.
/// Throws std::invalid_argument when every point diverged.
std::string bifurcation_svg(const chaos::SweepResult& sweep, double transient);

/// lambda_1..3 as polylines over epsilon with a dashed zero line.
std::string lyapunov_svg(const chaos::SweepResult& sweep);

/// Projection of the trajectory after `transient` onto `plane`, one
/// polyline. At most `max_points` vertices are drawn (uniform stride).
std::string portrait_svg(const solver::Trajectory& traj, const JerkParams& params, Plane plane,
                         double transient, std::size_t max_points = 20000);

}  // namespace fjerk::io
