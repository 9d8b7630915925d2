#pragma once

// Model definition for the periodic discrete nonlinear Schrodinger chain with
// power-law long-range coupling:
//
//   i dpsi_n/dt + gamma |psi_n|^2 psi_n
//       + J sum_{l=1}^{N/2-1} (psi_{n+l} - 2 psi_n + psi_{n-l}) / l^{1+alpha} = 0
//
//   H = sum_n [ J sum_l |psi_{n+l} - psi_n|^2 / l^{1+alpha} - (gamma/2)|psi_n|^4 ]
//   M = sum_n |psi_n|^2
//
// Sites use a centered convention n in {-N/2, ..., N/2-1} with x_n = n dx, so
// the central oscillator is n = 0. Storage index i = n + N/2.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adnls {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Raised for invalid model or run parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultLength = 2.0 * std::numbers::sqrt2 * std::numbers::pi;

struct LatticeConfig {
  int n_sites = 32;
  double alpha = 1.11;
  double gamma = 1.0;
  double j_ratio = 0.7;  ///< J / J0
  double length = kDefaultLength;

  [[nodiscard]] double spacing() const { return length / n_sites; }
  /// Largest interaction distance, N/2 - 1.
  [[nodiscard]] int cutoff() const { return n_sites / 2 - 1; }

  /// Throws ConfigError unless N >= 4 is even, alpha > 0, length > 0 and all
  /// values are finite.
  void validate() const;
};

struct CouplingKernel {
  std::vector<double> weights;  ///< weights[l-1] = J / l^{1+alpha}
  double j0 = 0.0;              ///< sum_{l=1}^{N/2-1} l^{-(1+alpha)}
  double j_absolute = 0.0;      ///< J = j_ratio * j0
};

struct ChainState {
  double time = 0.0;
  ComplexVector amplitudes;

  [[nodiscard]] std::size_t size() const { return amplitudes.size(); }
  [[nodiscard]] bool is_finite() const;
};

/// Storage index of centered site n, wrapping periodically.
[[nodiscard]] std::size_t storage_index(int n_sites, int site);
/// Centered site label of storage index i.
[[nodiscard]] inline int site_label(int n_sites, std::size_t i) {
  return static_cast<int>(i) - n_sites / 2;
}

[[nodiscard]] CouplingKernel build_kernel(const LatticeConfig& config);

[[nodiscard]] double excitation_number(std::span<const Complex> psi);
[[nodiscard]] inline double excitation_number(const ChainState& state) {
  return excitation_number(state.amplitudes);
}

[[nodiscard]] double hamiltonian(std::span<const Complex> psi, const CouplingKernel& kernel,
                                 const LatticeConfig& config);
[[nodiscard]] inline double hamiltonian(const ChainState& state, const CouplingKernel& kernel,
                                        const LatticeConfig& config) {
  return hamiltonian(state.amplitudes, kernel, config);
}

/// Writes dpsi/dt into `out`. `psi` and `out` must not alias.
void rhs_into(std::span<const Complex> psi, std::span<Complex> out, const CouplingKernel& kernel,
              const LatticeConfig& config);
[[nodiscard]] ComplexVector rhs(const ChainState& state, const CouplingKernel& kernel,
                                const LatticeConfig& config);

/// Default nearest-neighbour coupling 1/dx^2.
[[nodiscard]] inline double default_epsilon(const LatticeConfig& config) {
  const double dx = config.spacing();
  return 1.0 / (dx * dx);
}

// Nearest-neighbour reference chain (the alpha -> infinity limit).
void nearest_neighbor_rhs_into(std::span<const Complex> psi, std::span<Complex> out,
                               double epsilon, const LatticeConfig& config);
[[nodiscard]] ComplexVector nearest_neighbor_rhs(const ChainState& state, double epsilon,
                                                 const LatticeConfig& config);
[[nodiscard]] double nearest_neighbor_hamiltonian(std::span<const Complex> psi, double epsilon,
                                                  const LatticeConfig& config);

/// psi_n(0) = a + b cos(2 pi x_n / L).
[[nodiscard]] ChainState symmetric_profile(const LatticeConfig& config, double a = 0.5,
                                           double b = 0.1);

/// psi_n(0) = a [1 + b (e^{ic} cos(2 pi x_n / L) + e^{id} sin(2 pi x_n / L))].
[[nodiscard]] ChainState asymmetric_profile(const LatticeConfig& config, double a = 1.0,
                                            double b = 0.2, double c = 0.9, double d = 2.03);

/// Scales the state by the real factor sqrt(m_target / M). Throws ConfigError
/// for a zero state or a nonpositive target.
[[nodiscard]] ChainState rescale_to_norm(const ChainState& state, double m_target);

}  // namespace adnls
