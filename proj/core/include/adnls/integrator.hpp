#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "adnls/lattice.hpp"

namespace adnls {

struct IntegratorSettings {
  double t_final = 100.0;
  int n_samples = 1000;
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  /// Upper bound on the internal step; the sample spacing always caps it too.
  double max_step = std::numeric_limits<double>::infinity();

  void validate() const;
  /// t_q = q T / Q.
  [[nodiscard]] double sample_time(int q) const {
    return static_cast<double>(q) * t_final / static_cast<double>(n_samples);
  }
};

/// A right-hand side together with the energy it conserves. Both callables
/// must be pure.
struct Dynamics {
  std::function<void(std::span<const Complex>, std::span<Complex>)> rhs;
  std::function<double(std::span<const Complex>)> energy;
};

[[nodiscard]] Dynamics long_range_dynamics(const CouplingKernel& kernel,
                                           const LatticeConfig& config);
[[nodiscard]] Dynamics nearest_neighbor_dynamics(double epsilon, const LatticeConfig& config);

struct StepStatistics {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

struct Trajectory {
  std::vector<ChainState> samples;
  std::vector<double> m_history;
  std::vector<double> h_history;
  StepStatistics stats;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  [[nodiscard]] int n_sites() const {
    return samples.empty() ? 0 : static_cast<int>(samples.front().size());
  }
};

/// Thrown when the solution stops being finite or the step size collapses.
/// Carries the index of the last sample that was stored successfully.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, int last_good_sample, double time)
      : std::runtime_error(what), last_good_sample_(last_good_sample), time_(time) {}

  [[nodiscard]] int last_good_sample() const { return last_good_sample_; }
  [[nodiscard]] double time() const { return time_; }

 private:
  int last_good_sample_;
  double time_;
};

/// Advances `initial` with an embedded Dormand-Prince 5(4) pair under PI
/// step-size control, storing Q samples at exactly t_q = q T / Q,
/// q = 0..Q-1, starting from t_0 = initial.time.
[[nodiscard]] Trajectory integrate(const ChainState& initial, const Dynamics& dynamics,
                                   const IntegratorSettings& settings);
[[nodiscard]] Trajectory integrate(const ChainState& initial, const CouplingKernel& kernel,
                                   const LatticeConfig& config,
                                   const IntegratorSettings& settings);

struct ConservationReport {
  double m_drift = 0.0;  ///< max_q |M_q - M_0| / |M_0|
  double h_drift = 0.0;  ///< max_q |H_q - H_0| / |H_0|
};

/// Relative drifts fall back to absolute ones when the initial value is zero.
[[nodiscard]] ConservationReport conservation_report(const Trajectory& trajectory);

}  // namespace adnls
