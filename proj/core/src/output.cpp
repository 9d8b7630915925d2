#include "adnls/output.hpp"

#include <fstream>
#include <iomanip>
#include <limits>

#include <nlohmann/json.hpp>

namespace adnls::output {

namespace {

using nlohmann::json;

class PrecisionGuard {
 public:
  explicit PrecisionGuard(std::ostream& out) : out_(out), flags_(out.flags()), prec_(out.precision()) {
    out_ << std::setprecision(std::numeric_limits<double>::max_digits10);
    out_.unsetf(std::ios::floatfield);
  }
  ~PrecisionGuard() {
    out_.flags(flags_);
    out_.precision(prec_);
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::ostream& out_;
  std::ios::fmtflags flags_;
  std::streamsize prec_;
};

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_surface_csv(std::ostream& out, const diagnostics::Surface& surface) {
  PrecisionGuard guard(out);
  for (std::size_t q = 0; q < surface.rows; ++q) {
    for (std::size_t i = 0; i < surface.cols; ++i) {
      if (i > 0) out << ',';
      out << surface.at(q, i);
    }
    out << '\n';
  }
}

void write_central_csv(std::ostream& out, const RunBundle& bundle) {
  PrecisionGuard guard(out);
  const std::size_t center = storage_index(bundle.spec.config.n_sites, 0);
  out << "t,re_psi0,im_psi0,A,dA_dt,df\n";
  const auto& samples = bundle.trajectory.samples;
  for (std::size_t q = 0; q < samples.size(); ++q) {
    const Complex z = samples[q].amplitudes[center];
    out << samples[q].time << ',' << z.real() << ',' << z.imag() << ','
        << bundle.portrait.amplitude[q] << ',' << bundle.portrait.rate[q] << ','
        << bundle.phase_difference.values[q] << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const diagnostics::PowerSpectrum& spectrum) {
  PrecisionGuard guard(out);
  out << "w,S\n";
  for (std::size_t j = 0; j < spectrum.power.size(); ++j) {
    out << spectrum.frequencies[j] << ',' << spectrum.power[j] << '\n';
  }
}

std::string indicators_json(const RunBundle& bundle) {
  const auto& ind = bundle.indicators;
  json doc = {{"name", bundle.spec.name},
              {"flip_count", ind.flip_count},
              {"spectral_entropy", ind.spectral_entropy},
              {"dominant_mode_count", ind.dominant_mode_count},
              {"direction_switches", ind.direction_switches},
              {"final_localization", bundle.final_localization},
              {"undefined_phase_samples", bundle.phase_difference.undefined_samples}};
  return doc.dump(2, ' ', false, json::error_handler_t::strict);
}

std::string conservation_json(const RunBundle& bundle) {
  const auto& traj = bundle.trajectory;
  json doc = {{"m_drift", bundle.conservation.m_drift},
              {"h_drift", bundle.conservation.h_drift},
              {"m_initial", traj.m_history.front()},
              {"h_initial", traj.h_history.front()},
              {"accepted_steps", traj.stats.accepted},
              {"rejected_steps", traj.stats.rejected},
              {"rhs_evaluations", traj.stats.rhs_evaluations}};
  return doc.dump(2);
}

std::vector<std::filesystem::path> write_run(const RunBundle& bundle,
                                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto& spec = bundle.spec;
  if (spec.wants("surface")) {
    auto out = open(dir / "surface.csv");
    write_surface_csv(out, diagnostics::surface_export(bundle.trajectory));
    written.push_back(dir / "surface.csv");
  }
  if (spec.wants("central")) {
    auto out = open(dir / "central.csv");
    write_central_csv(out, bundle);
    written.push_back(dir / "central.csv");
  }
  if (spec.wants("spectrum")) {
    auto out = open(dir / "spectrum.csv");
    write_spectrum_csv(out, bundle.spectrum);
    written.push_back(dir / "spectrum.csv");
  }
  if (spec.wants("indicators")) {
    auto out = open(dir / "indicators.json");
    out << indicators_json(bundle) << '\n';
    written.push_back(dir / "indicators.json");
  }
  if (spec.wants("conservation")) {
    auto out = open(dir / "conservation.json");
    out << conservation_json(bundle) << '\n';
    written.push_back(dir / "conservation.json");
  }
  return written;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  PrecisionGuard guard(out);
  out << "alpha,m,flip_count,entropy,modes,m_drift,h_drift,status\n";
  for (const SweepPoint& p : result.points) {
    out << p.alpha << ',' << p.m_target << ',';
    if (p.status == PointStatus::ok) {
      out << p.indicators.flip_count << ',' << p.indicators.spectral_entropy << ','
          << p.indicators.dominant_mode_count << ',' << p.conservation.m_drift << ','
          << p.conservation.h_drift;
    } else {
      out << ",,,,";
    }
    out << ',' << to_string(p.status) << '\n';
  }
}

void write_onset_csv(std::ostream& out, const std::vector<Onset>& onsets) {
  PrecisionGuard guard(out);
  out << "alpha,onset_m\n";
  for (const Onset& o : onsets) {
    out << o.alpha << ',';
    if (o.m_onset) out << *o.m_onset;
    out << '\n';
  }
}

std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const std::vector<Onset>& onsets,
                                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open(dir / "sweep.csv");
    write_sweep_csv(out, result);
  }
  {
    auto out = open(dir / "onset.csv");
    write_onset_csv(out, onsets);
  }
  return {dir / "sweep.csv", dir / "onset.csv"};
}

}  // namespace adnls::output
