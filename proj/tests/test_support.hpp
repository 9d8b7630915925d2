#pragma once

#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "adnls/lattice.hpp"

#ifndef ADNLS_GOLDEN_DIR
#error "ADNLS_GOLDEN_DIR must point at tests/golden"
#endif

namespace adnls::testing {

inline nlohmann::json load_golden(const std::string& file) {
  std::ifstream in(std::string(ADNLS_GOLDEN_DIR) + "/" + file);
  if (!in) throw std::runtime_error("missing golden file " + file);
  return nlohmann::json::parse(in);
}

inline const nlohmann::json& reference_values() {
  static const nlohmann::json values = load_golden("reference_values.json");
  return values;
}

inline double relative_error(double actual, double expected) {
  const double scale = std::max(std::abs(expected), 1e-300);
  return std::abs(actual - expected) / scale;
}

inline ChainState random_state(int n_sites, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  ChainState state;
  state.amplitudes.resize(static_cast<std::size_t>(n_sites));
  for (auto& z : state.amplitudes) z = Complex{normal(rng), normal(rng)};
  return state;
}

inline LatticeConfig config_with(int n_sites, double alpha, double gamma = 1.0,
                                 double j_ratio = 0.7) {
  LatticeConfig config;
  config.n_sites = n_sites;
  config.alpha = alpha;
  config.gamma = gamma;
  config.j_ratio = j_ratio;
  return config;
}

}  // namespace adnls::testing
