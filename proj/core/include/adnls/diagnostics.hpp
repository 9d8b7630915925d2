#pragma once

// Per-run observables: central-oscillator phase portrait, nearest-site phase
// difference and its flips, time-domain DFT and power spectrum, the |psi|^2
// surface, and scalar chaos indicators.

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "adnls/integrator.hpp"
#include "adnls/lattice.hpp"

namespace adnls::diagnostics {

struct OscillatorSeries {
  int site = 0;
  std::vector<double> times;
  ComplexVector values;
};

/// psi_site(t_q) for every sample. Throws std::out_of_range for a site
/// outside {-N/2, ..., N/2-1}.
[[nodiscard]] OscillatorSeries oscillator_series(const Trajectory& traj, int site);

struct PhasePortrait {
  std::vector<double> amplitude;  ///< A = |psi_site|^2
  std::vector<double> rate;       ///< dA/dt = 2 Re(conj(psi) dpsi/dt), from the RHS
};

[[nodiscard]] PhasePortrait phase_portrait(const Trajectory& traj, const Dynamics& dynamics,
                                           int site = 0);
[[nodiscard]] PhasePortrait phase_portrait(const Trajectory& traj, const CouplingKernel& kernel,
                                           const LatticeConfig& config, int site = 0);

enum class PhaseConvention {
  /// Angle measured from the imaginary axis, atan2(Re, Im), so it reduces to
  /// atan(Re/Im) for Im > 0. The difference is folded to (-pi, pi].
  full_angle,
  /// atan(Re/Im) per site, each in (-pi/2, pi/2); difference unfolded.
  half_plane,
};

struct PhaseDifference {
  std::vector<double> values;  ///< NaN where a phase is undefined
  std::size_t undefined_samples = 0;
};

/// Phase of `site_a` minus phase of `site_b` at each sample. A phase is
/// undefined when |psi| < 1e-12.
[[nodiscard]] PhaseDifference phase_difference(const Trajectory& traj, int site_a = 0,
                                               int site_b = 1,
                                               PhaseConvention convention =
                                                   PhaseConvention::full_angle);

/// Counts sample-to-sample jumps with |df_{q+1} - df_q| > threshold where one
/// endpoint lies beyond +-(pi - threshold). Pairs touching NaN are skipped.
[[nodiscard]] int count_phase_flips(std::span<const double> df,
                                    double threshold = std::numbers::pi / 2);

struct PowerSpectrum {
  std::vector<double> frequencies;  ///< w_j = 2 pi j / Q
  std::vector<double> power;        ///< S_j = |psihat_j|^2
};

/// psihat_j = (1/Q) sum_q psi_q e^{-i w_j q}, w_j = 2 pi j / Q.
[[nodiscard]] ComplexVector time_dft(std::span<const Complex> series);
/// psi_q = sum_j psihat_j e^{i w_j q}.
[[nodiscard]] ComplexVector inverse_time_dft(std::span<const Complex> coefficients);

[[nodiscard]] PowerSpectrum time_power_spectrum(const OscillatorSeries& series);

struct SpectralSummary {
  double entropy = 0.0;  ///< -sum p_j ln p_j, p_j = S_j / sum S
  int dominant_mode_count = 0;
};

/// Throws std::invalid_argument for an all-zero spectrum.
[[nodiscard]] SpectralSummary spectral_summary(const PowerSpectrum& spectrum,
                                               double floor_ratio = 1e-6);

/// Row-major Q x N grid of |psi_n(t_q)|^2, columns in storage order
/// (n = -N/2 .. N/2-1).
struct Surface {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t q, std::size_t i) const { return values[q * cols + i]; }
  [[nodiscard]] double row_sum(std::size_t q) const;
};

[[nodiscard]] Surface surface_export(const Trajectory& traj);

/// max_n |psi_n(t_q)|^2 / M(t_q).
[[nodiscard]] double localization_ratio(const Trajectory& traj, std::size_t q);

/// Unwrapped arg(sum_n |psi_n|^2 e^{2 pi i n / N}) per sample. Where the
/// centroid vanishes, or jumps by more than a quarter turn between samples,
/// the previous angle is held.
[[nodiscard]] std::vector<double> center_of_norm_angle(const Trajectory& traj);

/// Sign changes of the time derivative of the smoothed center-of-norm
/// angle. Derivatives within +-deadband (radians per sample) do not change
/// the tracked direction.
[[nodiscard]] int direction_switches(const Trajectory& traj, int smoothing = 5,
                                     double deadband = 1e-6);

struct ChaosIndicators {
  int flip_count = 0;
  double spectral_entropy = 0.0;
  int dominant_mode_count = 0;
  int direction_switches = 0;
};

/// Indicators with the default thresholds: flips of df(0, 1) at pi/2, the
/// spectrum of psi_0 with floor 1e-6, and direction switches.
[[nodiscard]] ChaosIndicators chaos_indicators(const Trajectory& traj);

}  // namespace adnls::diagnostics
