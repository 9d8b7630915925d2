#include "adnls/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace adnls {

namespace {

const std::vector<std::string> kOutputs = {"surface", "central", "spectrum", "indicators",
                                           "conservation"};

}  // namespace

void ExperimentSpec::validate() const {
  config.validate();
  settings.validate();
  if (!(m_target > 0.0) || !std::isfinite(m_target)) {
    throw ConfigError("m_target must be positive");
  }
  const std::size_t expected = ic == InitialCondition::symmetric ? 2 : 4;
  if (!ic_params.empty() && ic_params.size() != expected) {
    throw ConfigError("initial condition expects " + std::to_string(expected) + " parameters, got " +
                      std::to_string(ic_params.size()));
  }
  for (const double p : ic_params) {
    if (!std::isfinite(p)) throw ConfigError("initial condition parameters must be finite");
  }
  if (epsilon && (!std::isfinite(*epsilon))) throw ConfigError("epsilon must be finite");
  for (const auto& out : outputs) {
    if (std::find(kOutputs.begin(), kOutputs.end(), out) == kOutputs.end()) {
      throw ConfigError("unknown output '" + out + "'");
    }
  }
}

bool ExperimentSpec::wants(const std::string& output) const {
  return outputs.empty() || std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

ChainState initial_state(const ExperimentSpec& spec) {
  const auto& p = spec.ic_params;
  ChainState state;
  if (spec.ic == InitialCondition::symmetric) {
    state = p.empty() ? symmetric_profile(spec.config) : symmetric_profile(spec.config, p[0], p[1]);
  } else {
    state = p.empty() ? asymmetric_profile(spec.config)
                      : asymmetric_profile(spec.config, p[0], p[1], p[2], p[3]);
  }
  return rescale_to_norm(state, spec.m_target);
}

Dynamics make_dynamics(const ExperimentSpec& spec, const CouplingKernel& kernel) {
  if (spec.model == CouplingModel::nearest_neighbor) {
    return nearest_neighbor_dynamics(spec.epsilon.value_or(default_epsilon(spec.config)),
                                     spec.config);
  }
  return long_range_dynamics(kernel, spec.config);
}

RunBundle run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  RunBundle bundle;
  bundle.spec = spec;
  bundle.kernel = build_kernel(spec.config);
  const Dynamics dynamics = make_dynamics(spec, bundle.kernel);
  bundle.trajectory = integrate(initial_state(spec), dynamics, spec.settings);

  const Trajectory& traj = bundle.trajectory;
  bundle.portrait = diagnostics::phase_portrait(traj, dynamics, 0);
  bundle.phase_difference = diagnostics::phase_difference(traj, 0, 1);
  bundle.spectrum = diagnostics::time_power_spectrum(diagnostics::oscillator_series(traj, 0));
  bundle.indicators = diagnostics::chaos_indicators(traj);
  bundle.conservation = conservation_report(traj);
  bundle.final_localization = diagnostics::localization_ratio(traj, traj.size() - 1);
  return bundle;
}

const char* to_string(PointStatus status) {
  switch (status) {
    case PointStatus::ok:
      return "ok";
    case PointStatus::blow_up:
      return "blow-up";
    case PointStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

namespace {

SweepPoint run_point(const ExperimentSpec& base, double alpha, double m_target) {
  SweepPoint point;
  point.alpha = alpha;
  point.m_target = m_target;
  ExperimentSpec spec = base;
  spec.config.alpha = alpha;
  spec.m_target = m_target;
  try {
    const RunBundle bundle = run_experiment(spec);
    point.status = PointStatus::ok;
    point.indicators = bundle.indicators;
    point.conservation = bundle.conservation;
    point.final_localization = bundle.final_localization;
  } catch (const BlowUpError& e) {
    point.status = PointStatus::blow_up;
    point.message = e.what();
  } catch (const std::exception& e) {
    point.status = PointStatus::skipped;
    point.message = e.what();
  }
  return point;
}

}  // namespace

SweepResult sweep(const std::vector<double>& alphas, const std::vector<double>& m_targets,
                  const ExperimentSpec& base, int workers) {
  SweepResult result;
  result.alphas = alphas;
  result.m_targets = m_targets;
  const std::size_t total = alphas.size() * m_targets.size();
  result.points.resize(total);
  if (total == 0) return result;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t ia = idx / m_targets.size();
      const std::size_t im = idx % m_targets.size();
      result.points[idx] = run_point(base, alphas[ia], m_targets[im]);
    }
  };

  const auto count = static_cast<std::size_t>(std::clamp(workers, 1, static_cast<int>(total)));
  if (count == 1) {
    worker();
    return result;
  }
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) pool.emplace_back(worker);
  pool.clear();  // joins
  return result;
}

std::vector<Onset> onset_scan(const SweepResult& result, int flip_threshold) {
  std::vector<Onset> onsets;
  onsets.reserve(result.alphas.size());
  for (std::size_t ia = 0; ia < result.alphas.size(); ++ia) {
    Onset onset;
    onset.alpha = result.alphas[ia];
    for (std::size_t im = 0; im < result.m_targets.size(); ++im) {
      const SweepPoint& p = result.at(ia, im);
      if (p.status != PointStatus::ok || p.indicators.flip_count < flip_threshold) continue;
      if (!onset.m_onset || p.m_target < *onset.m_onset) onset.m_onset = p.m_target;
    }
    onsets.push_back(onset);
  }
  return onsets;
}

}  // namespace adnls
