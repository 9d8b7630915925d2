// adnls: run, sweep and analyse the long-range discrete NLS chain.
//
//   adnls run --preset fig1 --out out/fig1
//   adnls sweep --alpha 0.73,1.51,1.91 --m 10,12.5,14.28 --workers 4 --out out/sweep
//   adnls dispersion --alpha 1.5 --out dispersion.csv
//   adnls presets

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adnls/experiment.hpp"
#include "adnls/output.hpp"
#include "adnls/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;

struct CommonOptions {
  std::string preset;
  std::string config_file;
  std::string preset_dir;
  std::optional<double> j_ratio;
  std::optional<std::string> ic;
  std::optional<double> t_final;
  std::optional<int> samples;
  std::optional<double> tol;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--preset", opts.preset, "Preset name (see `adnls presets`)");
  cmd->add_option("--config", opts.config_file, "Experiment JSON file");
  cmd->add_option("--preset-dir", opts.preset_dir, "Directory holding preset JSON files");
  cmd->add_option("--j-ratio", opts.j_ratio, "Normalized coupling J/J0");
  cmd->add_option("--ic", opts.ic, "Initial condition")
      ->check(CLI::IsMember({"symmetric", "asymmetric"}));
  cmd->add_option("--t-final", opts.t_final, "Integration time T");
  cmd->add_option("--samples", opts.samples, "Number of stored samples Q");
  cmd->add_option("--tol", opts.tol, "Relative tolerance (absolute tolerance is tol/100)");
  cmd->add_option("--out", opts.out, "Output directory");
}

std::filesystem::path preset_dir(const CommonOptions& opts) {
  return opts.preset_dir.empty() ? adnls::default_preset_dir()
                                 : std::filesystem::path(opts.preset_dir);
}

adnls::ExperimentSpec base_spec(const CommonOptions& opts) {
  if (!opts.preset.empty() && !opts.config_file.empty()) {
    throw adnls::ConfigError("--preset and --config are mutually exclusive");
  }
  adnls::ExperimentSpec spec;
  if (!opts.preset.empty()) spec = adnls::load_preset(preset_dir(opts), opts.preset);
  if (!opts.config_file.empty()) spec = adnls::load_experiment(opts.config_file);
  if (opts.j_ratio) spec.config.j_ratio = *opts.j_ratio;
  if (opts.ic) {
    const auto kind = *opts.ic == "symmetric" ? adnls::InitialCondition::symmetric
                                              : adnls::InitialCondition::asymmetric;
    if (kind != spec.ic) spec.ic_params.clear();
    spec.ic = kind;
  }
  if (opts.t_final) spec.settings.t_final = *opts.t_final;
  if (opts.samples) spec.settings.n_samples = *opts.samples;
  if (opts.tol) {
    spec.settings.rel_tol = *opts.tol;
    spec.settings.abs_tol = *opts.tol / 100.0;
  }
  return spec;
}

void print_summary(const adnls::RunBundle& bundle) {
  const auto& ind = bundle.indicators;
  std::cout << std::setprecision(10) << "run " << (bundle.spec.name.empty() ? "-" : bundle.spec.name)
            << ": alpha=" << bundle.spec.config.alpha << " M=" << bundle.spec.m_target
            << " J/J0=" << bundle.spec.config.j_ratio << '\n'
            << "  flip_count          " << ind.flip_count << '\n'
            << "  spectral_entropy    " << ind.spectral_entropy << '\n'
            << "  dominant_mode_count " << ind.dominant_mode_count << '\n'
            << "  direction_switches  " << ind.direction_switches << '\n'
            << "  final_localization  " << bundle.final_localization << '\n'
            << "  m_drift             " << bundle.conservation.m_drift << '\n'
            << "  h_drift             " << bundle.conservation.h_drift << '\n';
}

int cmd_run(const CommonOptions& opts, std::optional<double> alpha, std::optional<double> m) {
  adnls::ExperimentSpec spec = base_spec(opts);
  if (alpha) spec.config.alpha = *alpha;
  if (m) spec.m_target = *m;
  spec.validate();
  adnls::RunBundle bundle;
  try {
    bundle = adnls::run_experiment(spec);
  } catch (const adnls::BlowUpError& e) {
    std::cerr << "blow-up after sample " << e.last_good_sample() << ": " << e.what() << '\n';
    return kExitBlowUp;
  }
  print_summary(bundle);
  if (!opts.out.empty()) {
    for (const auto& path : adnls::output::write_run(bundle, opts.out)) {
      std::cout << "wrote " << path.string() << '\n';
    }
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, const std::vector<double>& alphas,
              const std::vector<double>& ms, int workers, int flip_threshold) {
  const adnls::ExperimentSpec base = base_spec(opts);
  base.validate();
  if (alphas.empty() || ms.empty()) throw adnls::ConfigError("sweep needs --alpha and --m lists");
  const adnls::SweepResult result = adnls::sweep(alphas, ms, base, workers);
  const auto onsets = adnls::onset_scan(result, flip_threshold);
  if (opts.out.empty()) {
    adnls::output::write_sweep_csv(std::cout, result);
    adnls::output::write_onset_csv(std::cout, onsets);
  } else {
    for (const auto& path : adnls::output::write_sweep(result, onsets, opts.out)) {
      std::cout << "wrote " << path.string() << '\n';
    }
  }
  return kExitOk;
}

int cmd_dispersion(const CommonOptions& opts, std::optional<double> alpha, int n_sites,
                   int n_terms) {
  adnls::ExperimentSpec spec = base_spec(opts);
  if (alpha) spec.config.alpha = *alpha;
  if (n_sites > 0) spec.config.n_sites = n_sites;
  spec.config.validate();
  const auto rows = adnls::spectral::dispersion_table(spec.config, n_terms);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!opts.out.empty()) {
    std::filesystem::path path = opts.out;
    if (std::filesystem::is_directory(path) || path.extension() != ".csv") {
      std::filesystem::create_directories(path);
      path /= "dispersion.csv";
    }
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    out = &file;
    std::cout << "wrote " << path.string() << '\n';
  }
  *out << std::setprecision(17) << "k,j_hat_direct,j_hat_expansion,t_hat,lattice_dispersion\n";
  for (const auto& r : rows) {
    *out << r.k << ',' << r.j_hat_direct << ',' << r.j_hat_expansion << ',' << r.t_hat << ','
         << r.lattice_dispersion << '\n';
  }
  return kExitOk;
}

int cmd_presets(const CommonOptions& opts) {
  const auto dir = preset_dir(opts);
  for (const auto& name : adnls::list_presets(dir)) {
    const auto spec = adnls::load_preset(dir, name);
    std::cout << std::left << std::setw(8) << name << " alpha=" << spec.config.alpha
              << " J/J0=" << spec.config.j_ratio << " M=" << spec.m_target << " ic="
              << (spec.ic == adnls::InitialCondition::symmetric ? "symmetric" : "asymmetric")
              << (spec.model == adnls::CouplingModel::nearest_neighbor ? " model=nearest_neighbor"
                                                                      : "")
              << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-range discrete nonlinear Schrodinger chain: simulation and analysis"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::optional<double> run_alpha;
  std::optional<double> run_m;
  auto* run = app.add_subcommand("run", "Integrate one experiment and compute diagnostics");
  add_common(run, run_opts);
  run->add_option("--alpha", run_alpha, "Coupling exponent alpha");
  run->add_option("--m", run_m, "Target excitation number M");

  CommonOptions sweep_opts;
  std::vector<double> sweep_alphas;
  std::vector<double> sweep_ms;
  int workers = 1;
  int flip_threshold = 2;
  auto* sweep = app.add_subcommand("sweep", "Run an (alpha, M) grid and locate chaos onset");
  add_common(sweep, sweep_opts);
  sweep->add_option("--alpha", sweep_alphas, "Alpha values")->delimiter(',');
  sweep->add_option("--m", sweep_ms, "M values")->delimiter(',');
  sweep->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--flip-threshold", flip_threshold, "Flips marking chaos onset");

  CommonOptions disp_opts;
  std::optional<double> disp_alpha;
  int disp_sites = 0;
  int disp_terms = 8;
  auto* dispersion = app.add_subcommand("dispersion", "Tabulate coupling symbols as CSV");
  add_common(dispersion, disp_opts);
  dispersion->add_option("--alpha", disp_alpha, "Coupling exponent alpha");
  dispersion->add_option("--n-sites", disp_sites, "Number of sites N");
  dispersion->add_option("--terms", disp_terms, "Series terms in the small-k expansion");

  CommonOptions preset_opts;
  auto* presets = app.add_subcommand("presets", "List shipped experiment presets");
  presets->add_option("--preset-dir", preset_opts.preset_dir, "Directory holding presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_opts, run_alpha, run_m);
    if (*sweep) return cmd_sweep(sweep_opts, sweep_alphas, sweep_ms, workers, flip_threshold);
    if (*dispersion) return cmd_dispersion(disp_opts, disp_alpha, disp_sites, disp_terms);
    if (*presets) return cmd_presets(preset_opts);
  } catch (const adnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
