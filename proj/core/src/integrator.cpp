#include "adnls/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

namespace adnls {

void IntegratorSettings::validate() const {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be positive");
  if (n_samples < 2) throw ConfigError("n_samples must be at least 2");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(max_step > 0.0)) throw ConfigError("max_step must be positive");
}

Dynamics long_range_dynamics(const CouplingKernel& kernel, const LatticeConfig& config) {
  return Dynamics{
      [kernel, config](std::span<const Complex> psi, std::span<Complex> out) {
        rhs_into(psi, out, kernel, config);
      },
      [kernel, config](std::span<const Complex> psi) { return hamiltonian(psi, kernel, config); }};
}

Dynamics nearest_neighbor_dynamics(double epsilon, const LatticeConfig& config) {
  return Dynamics{
      [epsilon, config](std::span<const Complex> psi, std::span<Complex> out) {
        nearest_neighbor_rhs_into(psi, out, epsilon, config);
      },
      [epsilon, config](std::span<const Complex> psi) {
        return nearest_neighbor_hamiltonian(psi, epsilon, config);
      }};
}

namespace {

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Dormand & Prince (1980) RK5(4)7M tableau.
struct Tableau {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  // b - bhat
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

class DormandPrince {
 public:
  DormandPrince(const Dynamics& dynamics, const IntegratorSettings& settings, std::size_t n)
      : dynamics_(dynamics), settings_(settings), y_new_(n), stage_(n) {
    for (auto& k : k_) k.resize(n);
  }

  /// Advances y from t to exactly t_target.
  void advance(ComplexVector& y, double& t, double t_target, int last_good_sample) {
    const double t_final = settings_.t_final;
    const double min_step = 1e-12 * t_final;
    if (!fsal_valid_) {
      eval(y, k_[0]);
      fsal_valid_ = true;
    }
    if (h_ <= 0.0) h_ = initial_step(y, t_target - t);

    while (t < t_target) {
      const double remaining = t_target - t;
      double h = std::min({h_, settings_.max_step, remaining});
      bool lands = false;
      if (h >= remaining * (1.0 - 1e-12)) {
        h = remaining;
        lands = true;
      }
      for (;;) {
        if (!(h >= min_step) && !(lands && h == remaining)) {
          throw BlowUpError("step size collapsed to " + format_g(h) + " at t = " + format_g(t),
                            last_good_sample, t);
        }
        const double err = attempt(y, h);
        if (std::isfinite(err) && err <= 1.0) {
          // PI controller, exponents 0.7/5 and 0.4/5.
          double factor = err == 0.0 ? kMaxGrowth
                                     : kSafety * std::pow(err, -0.14) * std::pow(err_prev_, 0.08);
          factor = std::clamp(factor, kMinShrink, rejected_last_ ? 1.0 : kMaxGrowth);
          err_prev_ = std::max(err, 1e-4);
          const double proposed = h * factor;
          // A step shortened to land on a sample must not shrink the proposal.
          h_ = lands ? std::max(h_, proposed) : proposed;
          rejected_last_ = false;
          ++stats.accepted;
          y.swap(y_new_);
          std::swap(k_[0], k_[6]);
          t = lands ? t_target : t + h;
          break;
        }
        ++stats.rejected;
        rejected_last_ = true;
        const double factor =
            std::isfinite(err) ? std::max(kMinShrink, kSafety * std::pow(err, -0.2)) : kMinShrink;
        h *= factor;
        h_ = h;
        lands = false;
      }
      for (const Complex z : y) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
          throw BlowUpError("non-finite amplitude at t = " + format_g(t), last_good_sample,
                            t);
        }
      }
    }
  }

  StepStatistics stats;

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kMinShrink = 0.2;
  static constexpr double kMaxGrowth = 5.0;

  void eval(std::span<const Complex> y, std::span<Complex> out) {
    dynamics_.rhs(y, out);
    ++stats.rhs_evaluations;
  }

  double initial_step(const ComplexVector& y, double span) const {
    // Hairer-Norsett-Wanner heuristic, first stage only.
    double d0 = 0.0;
    double d1 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double sc_re = settings_.abs_tol + settings_.rel_tol * std::abs(y[i].real());
      const double sc_im = settings_.abs_tol + settings_.rel_tol * std::abs(y[i].imag());
      d0 += std::pow(y[i].real() / sc_re, 2) + std::pow(y[i].imag() / sc_im, 2);
      d1 += std::pow(k_[0][i].real() / sc_re, 2) + std::pow(k_[0][i].imag() / sc_im, 2);
    }
    double h = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 : 0.01 * std::sqrt(d0 / d1);
    // Extreme tolerances overflow both norms.
    if (!std::isfinite(h) || h <= 0.0) h = 1e-6 * span;
    return std::min(h, span);
  }

  // One trial step of size h from y (with k_[0] = f(y)). Fills y_new_ and
  // k_[6] = f(y_new_) and returns the scaled error norm.
  double attempt(const ComplexVector& y, double h) {
    using T = Tableau;
    const std::size_t n = y.size();
    auto combine = [&](auto&& fn) {
      for (std::size_t i = 0; i < n; ++i) stage_[i] = y[i] + h * fn(i);
    };
    combine([&](std::size_t i) { return T::a21 * k_[0][i]; });
    eval(stage_, k_[1]);
    combine([&](std::size_t i) { return T::a31 * k_[0][i] + T::a32 * k_[1][i]; });
    eval(stage_, k_[2]);
    combine([&](std::size_t i) {
      return T::a41 * k_[0][i] + T::a42 * k_[1][i] + T::a43 * k_[2][i];
    });
    eval(stage_, k_[3]);
    combine([&](std::size_t i) {
      return T::a51 * k_[0][i] + T::a52 * k_[1][i] + T::a53 * k_[2][i] + T::a54 * k_[3][i];
    });
    eval(stage_, k_[4]);
    combine([&](std::size_t i) {
      return T::a61 * k_[0][i] + T::a62 * k_[1][i] + T::a63 * k_[2][i] + T::a64 * k_[3][i] +
             T::a65 * k_[4][i];
    });
    eval(stage_, k_[5]);
    for (std::size_t i = 0; i < n; ++i) {
      y_new_[i] = y[i] + h * (T::b1 * k_[0][i] + T::b3 * k_[2][i] + T::b4 * k_[3][i] +
                              T::b5 * k_[4][i] + T::b6 * k_[5][i]);
    }
    eval(y_new_, k_[6]);

    // RMS norm over the 2N real components.
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex e = h * (T::e1 * k_[0][i] + T::e3 * k_[2][i] + T::e4 * k_[3][i] +
                             T::e5 * k_[4][i] + T::e6 * k_[5][i] + T::e7 * k_[6][i]);
      const double sc_re =
          settings_.abs_tol +
          settings_.rel_tol * std::max(std::abs(y[i].real()), std::abs(y_new_[i].real()));
      const double sc_im =
          settings_.abs_tol +
          settings_.rel_tol * std::max(std::abs(y[i].imag()), std::abs(y_new_[i].imag()));
      sum += std::pow(e.real() / sc_re, 2) + std::pow(e.imag() / sc_im, 2);
    }
    return std::sqrt(sum / (2.0 * static_cast<double>(n)));
  }

  const Dynamics& dynamics_;
  const IntegratorSettings& settings_;
  ComplexVector y_new_;
  ComplexVector stage_;
  std::array<ComplexVector, 7> k_;
  double h_ = 0.0;
  double err_prev_ = 1e-4;
  bool rejected_last_ = false;
  bool fsal_valid_ = false;
};

}  // namespace

Trajectory integrate(const ChainState& initial, const Dynamics& dynamics,
                     const IntegratorSettings& settings) {
  settings.validate();
  if (!initial.is_finite()) throw ConfigError("initial state is not finite");
  if (initial.amplitudes.empty()) throw ConfigError("initial state is empty");

  Trajectory traj;
  const auto q_count = static_cast<std::size_t>(settings.n_samples);
  traj.samples.reserve(q_count);
  traj.m_history.reserve(q_count);
  traj.h_history.reserve(q_count);

  auto record = [&](const ComplexVector& y, double t) {
    traj.samples.push_back(ChainState{t, y});
    traj.m_history.push_back(excitation_number(y));
    traj.h_history.push_back(dynamics.energy(y));
  };

  const double t0 = initial.time;
  ComplexVector y = initial.amplitudes;
  double t = t0;
  record(y, t);

  DormandPrince stepper(dynamics, settings, y.size());
  for (int q = 1; q < settings.n_samples; ++q) {
    const double target = t0 + settings.sample_time(q);
    stepper.advance(y, t, target, q - 1);
    record(y, t);
  }
  traj.stats = stepper.stats;
  return traj;
}

Trajectory integrate(const ChainState& initial, const CouplingKernel& kernel,
                     const LatticeConfig& config, const IntegratorSettings& settings) {
  if (initial.size() != static_cast<std::size_t>(config.n_sites)) {
    throw ConfigError("initial state size does not match n_sites");
  }
  return integrate(initial, long_range_dynamics(kernel, config), settings);
}

ConservationReport conservation_report(const Trajectory& trajectory) {
  ConservationReport report;
  if (trajectory.m_history.empty()) return report;
  auto drift = [](const std::vector<double>& history) {
    const double ref = history.front();
    const double scale = ref != 0.0 ? std::abs(ref) : 1.0;
    double worst = 0.0;
    for (const double v : history) worst = std::max(worst, std::abs(v - ref) / scale);
    return worst;
  };
  report.m_drift = drift(trajectory.m_history);
  report.h_drift = drift(trajectory.h_history);
  return report;
}

}  // namespace adnls
