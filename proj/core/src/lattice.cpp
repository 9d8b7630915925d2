#include "adnls/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace adnls {

void LatticeConfig::validate() const {
  if (n_sites < 4 || n_sites % 2 != 0) {
    throw ConfigError("n_sites must be an even integer >= 4, got " + std::to_string(n_sites));
  }
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw ConfigError("alpha must be a positive finite number");
  }
  if (!std::isfinite(gamma) || !std::isfinite(j_ratio)) {
    throw ConfigError("gamma and j_ratio must be finite");
  }
  if (!std::isfinite(length) || length <= 0.0) {
    throw ConfigError("length must be positive");
  }
}

bool ChainState::is_finite() const {
  return std::isfinite(time) && std::all_of(amplitudes.begin(), amplitudes.end(), [](Complex z) {
           return std::isfinite(z.real()) && std::isfinite(z.imag());
         });
}

std::size_t storage_index(int n_sites, int site) {
  int i = (site + n_sites / 2) % n_sites;
  if (i < 0) i += n_sites;
  return static_cast<std::size_t>(i);
}

CouplingKernel build_kernel(const LatticeConfig& config) {
  config.validate();
  const int cutoff = config.cutoff();
  CouplingKernel kernel;
  kernel.weights.resize(static_cast<std::size_t>(cutoff));
  for (int l = 1; l <= cutoff; ++l) {
    kernel.j0 += std::pow(static_cast<double>(l), -(1.0 + config.alpha));
  }
  kernel.j_absolute = config.j_ratio * kernel.j0;
  for (int l = 1; l <= cutoff; ++l) {
    kernel.weights[static_cast<std::size_t>(l - 1)] =
        kernel.j_absolute * std::pow(static_cast<double>(l), -(1.0 + config.alpha));
  }
  return kernel;
}

double excitation_number(std::span<const Complex> psi) {
  double m = 0.0;
  for (const Complex z : psi) m += std::norm(z);
  return m;
}

namespace {

void check_size(std::span<const Complex> psi, const LatticeConfig& config) {
  if (psi.size() != static_cast<std::size_t>(config.n_sites)) {
    throw ConfigError("state has " + std::to_string(psi.size()) + " sites, config expects " +
                      std::to_string(config.n_sites));
  }
}

}  // namespace

double hamiltonian(std::span<const Complex> psi, const CouplingKernel& kernel,
                   const LatticeConfig& config) {
  check_size(psi, config);
  const std::size_t n = psi.size();
  double coupling = 0.0;
  double local = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 1; l <= kernel.weights.size(); ++l) {
      coupling += kernel.weights[l - 1] * std::norm(psi[(i + l) % n] - psi[i]);
    }
    local += std::norm(psi[i]) * std::norm(psi[i]);
  }
  return coupling - 0.5 * config.gamma * local;
}

void rhs_into(std::span<const Complex> psi, std::span<Complex> out, const CouplingKernel& kernel,
              const LatticeConfig& config) {
  const std::size_t n = psi.size();
  const std::size_t cutoff = kernel.weights.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex center = psi[i];
    Complex lap{0.0, 0.0};
    for (std::size_t l = 1; l <= cutoff; ++l) {
      const Complex right = psi[(i + l) % n];
      const Complex left = psi[(i + n - l) % n];
      lap += kernel.weights[l - 1] * (right - 2.0 * center + left);
    }
    const Complex a = config.gamma * std::norm(center) * center + lap;
    out[i] = Complex{-a.imag(), a.real()};  // i * a
  }
}

ComplexVector rhs(const ChainState& state, const CouplingKernel& kernel,
                  const LatticeConfig& config) {
  check_size(state.amplitudes, config);
  ComplexVector out(state.size());
  rhs_into(state.amplitudes, out, kernel, config);
  return out;
}

void nearest_neighbor_rhs_into(std::span<const Complex> psi, std::span<Complex> out,
                               double epsilon, const LatticeConfig& config) {
  const std::size_t n = psi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex center = psi[i];
    const Complex lap = psi[(i + 1) % n] - 2.0 * center + psi[(i + n - 1) % n];
    const Complex a = config.gamma * std::norm(center) * center + epsilon * lap;
    out[i] = Complex{-a.imag(), a.real()};
  }
}

ComplexVector nearest_neighbor_rhs(const ChainState& state, double epsilon,
                                   const LatticeConfig& config) {
  check_size(state.amplitudes, config);
  ComplexVector out(state.size());
  nearest_neighbor_rhs_into(state.amplitudes, out, epsilon, config);
  return out;
}

double nearest_neighbor_hamiltonian(std::span<const Complex> psi, double epsilon,
                                    const LatticeConfig& config) {
  check_size(psi, config);
  const std::size_t n = psi.size();
  double coupling = 0.0;
  double local = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    coupling += std::norm(psi[(i + 1) % n] - psi[i]);
    local += std::norm(psi[i]) * std::norm(psi[i]);
  }
  return epsilon * coupling - 0.5 * config.gamma * local;
}

namespace {

// 2 pi x_n / L with x_n = n L / N; L cancels.
double profile_angle(int n_sites, std::size_t i) {
  return 2.0 * std::numbers::pi * site_label(n_sites, i) / n_sites;
}

}  // namespace

ChainState symmetric_profile(const LatticeConfig& config, double a, double b) {
  config.validate();
  ChainState state;
  state.amplitudes.resize(static_cast<std::size_t>(config.n_sites));
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    state.amplitudes[i] = Complex{a + b * std::cos(profile_angle(config.n_sites, i)), 0.0};
  }
  return state;
}

ChainState asymmetric_profile(const LatticeConfig& config, double a, double b, double c,
                              double d) {
  config.validate();
  const Complex ec = std::polar(1.0, c);
  const Complex ed = std::polar(1.0, d);
  ChainState state;
  state.amplitudes.resize(static_cast<std::size_t>(config.n_sites));
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    const double theta = profile_angle(config.n_sites, i);
    state.amplitudes[i] = a * (1.0 + b * (ec * std::cos(theta) + ed * std::sin(theta)));
  }
  return state;
}

ChainState rescale_to_norm(const ChainState& state, double m_target) {
  if (!(m_target > 0.0) || !std::isfinite(m_target)) {
    throw ConfigError("target excitation number must be positive");
  }
  const double m = excitation_number(state);
  if (!(m > 0.0)) {
    throw ConfigError("cannot rescale a state with zero excitation number");
  }
  ChainState out = state;
  if (m == m_target) return out;
  const double factor = std::sqrt(m_target / m);
  for (Complex& z : out.amplitudes) z *= factor;
  return out;
}

}  // namespace adnls
