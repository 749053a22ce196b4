#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "fjerk/core/model.hpp"
#include "fjerk/core/orders.hpp"

namespace fjerk::stability {

enum class Stability { Stable, Unstable, Marginal };

std::string_view to_string(Stability s) noexcept;

/// Stable when every root has |arg| > threshold + 1e-9, Marginal when the
/// smallest |arg| lies within 1e-9 of the threshold or a root is zero,
/// Unstable otherwise.
Stability classify_spectrum(const std::vector<std::complex<double>>& roots, double threshold);

/// Commensurate: eigenvalues of the Jacobian at `eq` against alpha pi / 2.
/// Incommensurate: roots of the lifted characteristic polynomial of degree
/// p+q+m against pi / (2M); refused with DomainError(Unsupported) above
/// degree 600.
Stability classify_stability(const JerkParams& params, const OrderSpec& orders,
                             const Equilibrium& eq);

/// Roots of mu^(p+q+m) + a eps mu^(p+q) + b mu^p -+ 2 eps.
std::vector<std::complex<double>> lifted_roots(const JerkParams& params,
                                               const ReducedOrders& reduced, Branch branch);

}  // namespace fjerk::stability
