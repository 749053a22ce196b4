#include "fjerk/stability/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/Polynomials>

#include "fjerk/core/errors.hpp"

namespace fjerk::stability {

namespace {

constexpr double kArgBand = 1e-9;
constexpr double kZeroRoot = 1e-12;
constexpr std::int64_t kMaxDegree = 600;

}  // namespace

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Marginal: return "marginal";
  }
  return "?";
}

Stability classify_spectrum(const std::vector<std::complex<double>>& roots, double threshold) {
  double min_arg = std::numbers::pi;
  for (const auto& r : roots) {
    if (std::abs(r) < kZeroRoot) return Stability::Marginal;
    min_arg = std::min(min_arg, std::abs(std::arg(r)));
  }
  if (min_arg > threshold + kArgBand) return Stability::Stable;
  if (min_arg >= threshold - kArgBand) return Stability::Marginal;
  return Stability::Unstable;
}

std::vector<std::complex<double>> lifted_roots(const JerkParams& params, const ReducedOrders& red,
                                               Branch branch) {
  const std::int64_t n3 = red.total();
  if (n3 > kMaxDegree) {
    std::ostringstream os;
    os << "lifted polynomial degree " << n3 << " exceeds " << kMaxDegree;
    throw DomainError(Errc::Unsupported, os.str());
  }
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(n3 + 1);
  coeffs[n3] += 1.0;
  coeffs[red.p + red.q] += params.a * params.epsilon;
  coeffs[red.p] += params.b;
  coeffs[0] += constant_sign(branch) * params.epsilon;
  // Strip vanishing low-order coefficients; they are roots at zero.
  std::vector<std::complex<double>> out;
  Eigen::Index low = 0;
  while (low < n3 && coeffs[low] == 0.0) {
    out.emplace_back(0.0, 0.0);
    ++low;
  }
  if (n3 - low >= 1) {
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs.segment(low, n3 + 1 - low));
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) out.push_back(solver.roots()[i]);
  }
  return out;
}

Stability classify_stability(const JerkParams& params, const OrderSpec& orders,
                             const Equilibrium& eq) {
  if (orders.is_commensurate()) {
    const double alpha = orders.alphas()[0];
    const Mat3 J = jacobian_at(params, eq);
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) m(i, k) = J[i][k];
    }
    const Eigen::Vector3cd ev = Eigen::EigenSolver<Eigen::Matrix3d>(m, false).eigenvalues();
    return classify_spectrum({ev[0], ev[1], ev[2]}, std::numbers::pi * alpha / 2.0);
  }
  const ReducedOrders red = reduce_orders(orders);
  return classify_spectrum(lifted_roots(params, red, eq.branch), red.lift_angle());
}

}  // namespace fjerk::stability
