#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adnls/diagnostics.hpp"
#include "adnls/integrator.hpp"
#include "adnls/lattice.hpp"

namespace adnls {

enum class InitialCondition { symmetric, asymmetric };
enum class CouplingModel { long_range, nearest_neighbor };

struct ExperimentSpec {
  std::string name;
  LatticeConfig config;
  CouplingModel model = CouplingModel::long_range;
  /// Nearest-neighbour coupling; 1/dx^2 when unset.
  std::optional<double> epsilon;
  InitialCondition ic = InitialCondition::symmetric;
  /// (a, b) for symmetric, (a, b, c, d) for asymmetric; defaults when empty.
  std::vector<double> ic_params;
  double m_target = 12.5;
  IntegratorSettings settings;
  /// Subset of surface, central, spectrum, indicators, conservation. Empty
  /// means all of them.
  std::vector<std::string> outputs;

  void validate() const;
  [[nodiscard]] bool wants(const std::string& output) const;
};

[[nodiscard]] ExperimentSpec parse_experiment(const std::string& json_text);
[[nodiscard]] ExperimentSpec load_experiment(const std::filesystem::path& path);
[[nodiscard]] std::string experiment_to_json(const ExperimentSpec& spec);

/// Preset files are `<dir>/<name>.json`.
[[nodiscard]] std::filesystem::path default_preset_dir();
[[nodiscard]] std::vector<std::string> list_presets(const std::filesystem::path& dir);
[[nodiscard]] ExperimentSpec load_preset(const std::filesystem::path& dir, const std::string& name);

/// The profile selected by the spec, rescaled to m_target.
[[nodiscard]] ChainState initial_state(const ExperimentSpec& spec);
[[nodiscard]] Dynamics make_dynamics(const ExperimentSpec& spec, const CouplingKernel& kernel);

struct RunBundle {
  ExperimentSpec spec;
  CouplingKernel kernel;
  Trajectory trajectory;
  diagnostics::PhasePortrait portrait;
  diagnostics::PhaseDifference phase_difference;
  diagnostics::PowerSpectrum spectrum;
  diagnostics::ChaosIndicators indicators;
  ConservationReport conservation;
  double final_localization = 0.0;
};

/// Integrates and evaluates every diagnostic. Deterministic; writes nothing.
/// Propagates BlowUpError.
[[nodiscard]] RunBundle run_experiment(const ExperimentSpec& spec);

enum class PointStatus { ok, blow_up, skipped };
[[nodiscard]] const char* to_string(PointStatus status);

struct SweepPoint {
  double alpha = 0.0;
  double m_target = 0.0;
  PointStatus status = PointStatus::skipped;
  diagnostics::ChaosIndicators indicators;
  ConservationReport conservation;
  double final_localization = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<double> alphas;
  std::vector<double> m_targets;
  std::vector<SweepPoint> points;  ///< row-major: alpha index, then m index

  [[nodiscard]] const SweepPoint& at(std::size_t alpha_index, std::size_t m_index) const {
    return points[alpha_index * m_targets.size() + m_index];
  }
};

/// Runs every (alpha, m) point on `base` with up to `workers` threads.
/// Failures are recorded per point; the result does not depend on the
/// worker count.
[[nodiscard]] SweepResult sweep(const std::vector<double>& alphas,
                                const std::vector<double>& m_targets, const ExperimentSpec& base,
                                int workers = 1);

struct Onset {
  double alpha = 0.0;
  std::optional<double> m_onset;
};

/// Smallest M per alpha row whose flip count reaches `flip_threshold`, among
/// points with status ok.
[[nodiscard]] std::vector<Onset> onset_scan(const SweepResult& result, int flip_threshold = 2);

}  // namespace adnls
