#pragma once

namespace adnls::special {

/// Dirichlet eta function for real s > 0, via Borwein's accelerated
/// alternating series.
[[nodiscard]] double dirichlet_eta(double s);

/// Riemann zeta function for real s != 1. Uses eta(s) / (1 - 2^{1-s}) for
/// s >= 1/2 and the functional equation for s < 1/2. Relative accuracy is
/// around 1e-14 away from the pole.
[[nodiscard]] double riemann_zeta(double s);

/// True when x is within `tol` of an integer.
[[nodiscard]] bool near_integer(double x, double tol = 1e-12);

}  // namespace adnls::special
