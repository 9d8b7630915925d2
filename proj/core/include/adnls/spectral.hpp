#pragma once

// Continuum-limit analysis of the long-range coupling. The infinite-chain
// coupling symbol
//
//   Jhat(k) = sum_{n != 0} e^{-i k n dx} / |n|^{1+alpha}
//           = Li_{1+alpha}(e^{i k dx}) + Li_{1+alpha}(e^{-i k dx})
//
// is compared against its small-k expansion, the fractional (|k|^alpha) and
// second-order (k^2) symbols, and the finite-lattice dispersion relation.

#include <vector>

#include "adnls/lattice.hpp"

namespace adnls::spectral {

struct DispersionPoint {
  double k = 0.0;
  double j_hat = 0.0;
  double t_hat = 0.0;
};

/// Jhat(k) = sum_{n>=1} 2 cos(k n dx) / n^{1+alpha}, summed directly with an
/// explicit tail bound below `tol`. The tail is handled by Euler-Maclaurin at
/// k dx = 0 (mod 2 pi) and by an asymptotic expansion in Li_{-m} otherwise.
[[nodiscard]] double j_hat_direct(double k, double alpha, double dx, double tol = 1e-13);

/// a_alpha = 2 Gamma(-alpha) cos(pi alpha / 2). Rejects integer alpha.
[[nodiscard]] double a_alpha(double alpha);

/// a_alpha |dx|^alpha |k|^alpha
///   + 2 sum_{n=0}^{n_terms} zeta(1+alpha-2n) dx^{2n} (-k^2)^n / (2n)!
/// Valid for |k dx| < 1; throws std::domain_error outside.
[[nodiscard]] double j_hat_expansion(double k, double alpha, double dx, int n_terms = 8);

/// Fractional transform symbol:
///   alpha in (0,2): a_alpha |k|^alpha - |dx|^{2-alpha} zeta(alpha-1) k^2
///   alpha in (2,4): |dx|^{alpha-2} a_alpha |k|^alpha - zeta(alpha-1) k^2
[[nodiscard]] double t_hat_symbol(double k, double alpha, double dx);

/// Crossover wavenumber k0 = |a_alpha / zeta(alpha-1)|^{1/(2-alpha)} / |dx|.
[[nodiscard]] double crossover_k0(double alpha, double dx);

/// G = 2 J |dx|^alpha Gamma(-alpha) cos(pi alpha / 2) for alpha in (0,2) \ {1}.
[[nodiscard]] double fnls_coefficient_g(double alpha, double j_absolute, double dx);

/// Linear-mode frequency of the finite chain at gamma = 0:
///   omega(k) = J sum_{l=1}^{N/2-1} 2 (1 - cos(k l dx)) / l^{1+alpha}.
[[nodiscard]] double lattice_dispersion(double k, const CouplingKernel& kernel,
                                        const LatticeConfig& config);

struct DispersionRow {
  double k = 0.0;
  double j_hat_direct = 0.0;
  double j_hat_expansion = 0.0;  ///< NaN outside |k dx| < 1
  double t_hat = 0.0;            ///< NaN for alpha outside the symbol's domain
  double lattice_dispersion = 0.0;
};

/// Table over the lattice Brillouin grid k_m = 2 pi m / L, m = 0..N/2.
[[nodiscard]] std::vector<DispersionRow> dispersion_table(const LatticeConfig& config,
                                                          int n_terms = 8);

}  // namespace adnls::spectral
