#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "adnls/experiment.hpp"

namespace adnls::output {

// Floats are written with 17 significant digits so values round-trip.

void write_surface_csv(std::ostream& out, const diagnostics::Surface& surface);
/// Columns t, re_psi0, im_psi0, A, dA_dt, df.
void write_central_csv(std::ostream& out, const RunBundle& bundle);
/// Columns w, S.
void write_spectrum_csv(std::ostream& out, const diagnostics::PowerSpectrum& spectrum);
[[nodiscard]] std::string indicators_json(const RunBundle& bundle);
[[nodiscard]] std::string conservation_json(const RunBundle& bundle);

/// Writes every output listed in the experiment into `dir` (created if missing).
/// Returns the paths written.
std::vector<std::filesystem::path> write_run(const RunBundle& bundle,
                                             const std::filesystem::path& dir);

/// Columns alpha, m, flip_count, entropy, modes, m_drift, h_drift, status.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
/// Columns alpha, onset_m (empty when no onset was found).
void write_onset_csv(std::ostream& out, const std::vector<Onset>& onsets);
std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const std::vector<Onset>& onsets,
                                               const std::filesystem::path& dir);

}  // namespace adnls::output
