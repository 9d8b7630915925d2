#include "adnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace adnls::diagnostics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUndefinedModulus = 1e-12;

std::size_t checked_index(const Trajectory& traj, int site) {
  const int n = traj.n_sites();
  if (site < -n / 2 || site >= n / 2) {
    throw std::out_of_range("site " + std::to_string(site) + " outside [" +
                            std::to_string(-n / 2) + ", " + std::to_string(n / 2 - 1) + "]");
  }
  return storage_index(n, site);
}

// Fold into (-pi, pi].
double fold(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

double phase(Complex z, PhaseConvention convention) {
  if (std::abs(z) < kUndefinedModulus) return std::numeric_limits<double>::quiet_NaN();
  if (convention == PhaseConvention::full_angle) return std::atan2(z.real(), z.imag());
  return std::atan(z.real() / z.imag());
}

// e^{-2 pi i m / Q} for m = 0..Q-1; exponents are reduced exactly mod Q.
ComplexVector twiddles(std::size_t q_count) {
  ComplexVector table(q_count);
  for (std::size_t m = 0; m < q_count; ++m) {
    table[m] = std::polar(1.0, -2.0 * kPi * static_cast<double>(m) / static_cast<double>(q_count));
  }
  return table;
}

}  // namespace

OscillatorSeries oscillator_series(const Trajectory& traj, int site) {
  const std::size_t i = checked_index(traj, site);
  OscillatorSeries series;
  series.site = site;
  series.times.reserve(traj.size());
  series.values.reserve(traj.size());
  for (const ChainState& s : traj.samples) {
    series.times.push_back(s.time);
    series.values.push_back(s.amplitudes[i]);
  }
  return series;
}

PhasePortrait phase_portrait(const Trajectory& traj, const Dynamics& dynamics, int site) {
  const std::size_t i = checked_index(traj, site);
  PhasePortrait portrait;
  portrait.amplitude.reserve(traj.size());
  portrait.rate.reserve(traj.size());
  ComplexVector derivative(static_cast<std::size_t>(traj.n_sites()));
  for (const ChainState& s : traj.samples) {
    dynamics.rhs(s.amplitudes, derivative);
    const Complex z = s.amplitudes[i];
    portrait.amplitude.push_back(std::norm(z));
    portrait.rate.push_back(2.0 * (std::conj(z) * derivative[i]).real());
  }
  return portrait;
}

PhasePortrait phase_portrait(const Trajectory& traj, const CouplingKernel& kernel,
                             const LatticeConfig& config, int site) {
  return phase_portrait(traj, long_range_dynamics(kernel, config), site);
}

PhaseDifference phase_difference(const Trajectory& traj, int site_a, int site_b,
                                 PhaseConvention convention) {
  const std::size_t ia = checked_index(traj, site_a);
  const std::size_t ib = checked_index(traj, site_b);
  PhaseDifference out;
  out.values.reserve(traj.size());
  for (const ChainState& s : traj.samples) {
    const double pa = phase(s.amplitudes[ia], convention);
    const double pb = phase(s.amplitudes[ib], convention);
    if (std::isnan(pa) || std::isnan(pb)) {
      out.values.push_back(std::numeric_limits<double>::quiet_NaN());
      ++out.undefined_samples;
      continue;
    }
    const double d = pa - pb;
    out.values.push_back(convention == PhaseConvention::full_angle ? fold(d) : d);
  }
  return out;
}

int count_phase_flips(std::span<const double> df, double threshold) {
  if (!(threshold > 0.0 && threshold < kPi)) {
    throw std::invalid_argument("flip threshold must lie in (0, pi)");
  }
  const double edge = kPi - threshold;
  int flips = 0;
  for (std::size_t q = 0; q + 1 < df.size(); ++q) {
    const double a = df[q];
    const double b = df[q + 1];
    if (std::isnan(a) || std::isnan(b)) continue;
    if (std::abs(b - a) > threshold && std::max(std::abs(a), std::abs(b)) >= edge) ++flips;
  }
  return flips;
}

ComplexVector time_dft(std::span<const Complex> series) {
  const std::size_t q_count = series.size();
  const ComplexVector w = twiddles(q_count);
  ComplexVector out(q_count);
  for (std::size_t j = 0; j < q_count; ++j) {
    Complex acc{0.0, 0.0};
    std::size_t m = 0;  // j q mod Q
    for (std::size_t q = 0; q < q_count; ++q) {
      acc += series[q] * w[m];
      m += j;
      if (m >= q_count) m -= q_count;
    }
    out[j] = acc / static_cast<double>(q_count);
  }
  return out;
}

ComplexVector inverse_time_dft(std::span<const Complex> coefficients) {
  const std::size_t q_count = coefficients.size();
  const ComplexVector w = twiddles(q_count);
  ComplexVector out(q_count);
  for (std::size_t q = 0; q < q_count; ++q) {
    Complex acc{0.0, 0.0};
    std::size_t m = 0;
    for (std::size_t j = 0; j < q_count; ++j) {
      acc += coefficients[j] * std::conj(w[m]);
      m += q;
      if (m >= q_count) m -= q_count;
    }
    out[q] = acc;
  }
  return out;
}

PowerSpectrum time_power_spectrum(const OscillatorSeries& series) {
  const std::size_t q_count = series.values.size();
  if (q_count < 2) throw std::invalid_argument("power spectrum needs at least two samples");
  const ComplexVector coeffs = time_dft(series.values);
  PowerSpectrum spectrum;
  spectrum.frequencies.resize(q_count);
  spectrum.power.resize(q_count);
  for (std::size_t j = 0; j < q_count; ++j) {
    spectrum.frequencies[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(q_count);
    spectrum.power[j] = std::norm(coeffs[j]);
  }
  return spectrum;
}

SpectralSummary spectral_summary(const PowerSpectrum& spectrum, double floor_ratio) {
  double total = 0.0;
  double peak = 0.0;
  for (const double s : spectrum.power) {
    total += s;
    peak = std::max(peak, s);
  }
  if (!(total > 0.0)) throw std::invalid_argument("spectral summary of an all-zero spectrum");
  SpectralSummary summary;
  for (const double s : spectrum.power) {
    if (s > 0.0) {
      const double p = s / total;
      summary.entropy -= p * std::log(p);
    }
    if (s > floor_ratio * peak) ++summary.dominant_mode_count;
  }
  summary.entropy = std::max(summary.entropy, 0.0);
  return summary;
}

double Surface::row_sum(std::size_t q) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < cols; ++i) sum += at(q, i);
  return sum;
}

Surface surface_export(const Trajectory& traj) {
  Surface surface;
  surface.rows = traj.size();
  surface.cols = static_cast<std::size_t>(traj.n_sites());
  surface.values.reserve(surface.rows * surface.cols);
  for (const ChainState& s : traj.samples) {
    for (const Complex z : s.amplitudes) surface.values.push_back(std::norm(z));
  }
  return surface;
}

double localization_ratio(const Trajectory& traj, std::size_t q) {
  const ChainState& s = traj.samples.at(q);
  double peak = 0.0;
  for (const Complex z : s.amplitudes) peak = std::max(peak, std::norm(z));
  return peak / excitation_number(s);
}

std::vector<double> center_of_norm_angle(const Trajectory& traj) {
  const int n = traj.n_sites();
  ComplexVector basis(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    basis[i] = std::polar(1.0, 2.0 * kPi * site_label(n, i) / n);
  }
  std::vector<double> angles;
  angles.reserve(traj.size());
  double previous_raw = 0.0;
  double unwrapped = 0.0;
  bool have_previous = false;
  for (const ChainState& s : traj.samples) {
    Complex centroid{0.0, 0.0};
    double mass = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const double w = std::norm(s.amplitudes[i]);
      centroid += w * basis[i];
      mass += w;
    }
    if (std::abs(centroid) > 1e-12 * std::max(mass, 1e-300)) {
      const double raw = std::arg(centroid);
      if (have_previous) {
        // A half-turn between samples is the centroid passing through the
        // origin; its sense is set by roundoff, so no travel is recorded.
        const double step = fold(raw - previous_raw);
        if (std::abs(step) <= 0.5 * kPi) unwrapped += step;
      } else {
        unwrapped = raw;
        have_previous = true;
      }
      previous_raw = raw;
    }
    angles.push_back(unwrapped);
  }
  return angles;
}

int direction_switches(const Trajectory& traj, int smoothing, double deadband) {
  if (smoothing < 1) throw std::invalid_argument("smoothing window must be >= 1");
  const std::vector<double> angle = center_of_norm_angle(traj);
  const auto window = static_cast<std::size_t>(smoothing);
  if (angle.size() < window + 1) return 0;

  std::vector<double> smooth;
  smooth.reserve(angle.size() - window + 1);
  for (std::size_t q = 0; q + window <= angle.size(); ++q) {
    double sum = 0.0;
    for (std::size_t w = 0; w < window; ++w) sum += angle[q + w];
    smooth.push_back(sum / static_cast<double>(window));
  }

  int direction = 0;
  int switches = 0;
  for (std::size_t q = 0; q + 1 < smooth.size(); ++q) {
    const double rate = smooth[q + 1] - smooth[q];
    int now = 0;
    if (rate > deadband) now = 1;
    if (rate < -deadband) now = -1;
    if (now == 0) continue;
    if (direction != 0 && now != direction) ++switches;
    direction = now;
  }
  return switches;
}

ChaosIndicators chaos_indicators(const Trajectory& traj) {
  ChaosIndicators indicators;
  indicators.flip_count = count_phase_flips(phase_difference(traj, 0, 1).values);
  const SpectralSummary summary = spectral_summary(time_power_spectrum(oscillator_series(traj, 0)));
  indicators.spectral_entropy = summary.entropy;
  indicators.dominant_mode_count = summary.dominant_mode_count;
  indicators.direction_switches = direction_switches(traj);
  return indicators;
}

}  // namespace adnls::diagnostics
