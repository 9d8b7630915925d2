#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "adnls/diagnostics.hpp"
#include "adnls/spectral.hpp"
#include "test_support.hpp"

namespace adnls {
namespace {

using namespace diagnostics;
using testing::config_with;
using testing::relative_error;

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

Trajectory synthetic(int n_sites, int n_samples, double dt,
                     const std::function<Complex(int site, int q)>& field) {
  Trajectory traj;
  for (int q = 0; q < n_samples; ++q) {
    ChainState s;
    s.time = q * dt;
    s.amplitudes.resize(static_cast<std::size_t>(n_sites));
    for (std::size_t i = 0; i < s.size(); ++i) s.amplitudes[i] = field(site_label(n_sites, i), q);
    traj.m_history.push_back(excitation_number(s));
    traj.h_history.push_back(0.0);
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

Trajectory symmetric_run(double m_target, double t_final, int n_samples) {
  const auto config = config_with(32, 1.11, 1.0, 0.7);
  IntegratorSettings settings;
  settings.t_final = t_final;
  settings.n_samples = n_samples;
  return integrate(rescale_to_norm(symmetric_profile(config), m_target), build_kernel(config),
                   config, settings);
}

TEST(OscillatorSeries, ExtractsSiteAndTimes) {
  const auto traj = synthetic(8, 5, 0.5, [](int n, int q) { return Complex(n, q); });
  const auto series = oscillator_series(traj, -2);
  ASSERT_EQ(series.values.size(), 5u);
  for (int q = 0; q < 5; ++q) {
    EXPECT_EQ(series.values[q], Complex(-2, q));
    EXPECT_EQ(series.times[q], q * 0.5);
  }
  EXPECT_THROW((void)oscillator_series(traj, 4), std::out_of_range);
  EXPECT_THROW((void)oscillator_series(traj, -5), std::out_of_range);
}

TEST(PhasePortrait, UniformRotationIsStationary) {
  const auto config = config_with(16, 1.11, 1.0);
  const auto kernel = build_kernel(config);
  const Complex c{0.6, 0.3};
  const auto traj = synthetic(16, 50, 0.1, [&](int, int q) {
    return c * std::polar(1.0, std::norm(c) * q * 0.1);
  });
  const auto portrait = phase_portrait(traj, kernel, config);
  for (std::size_t q = 0; q < traj.size(); ++q) {
    EXPECT_NEAR(portrait.amplitude[q], std::norm(c), 1e-15);
    EXPECT_NEAR(portrait.rate[q], 0.0, 1e-15);
  }
}

TEST(PhasePortrait, ZeroState) {
  const auto config = config_with(16, 1.11);
  const auto traj = synthetic(16, 10, 0.1, [](int, int) { return Complex{}; });
  const auto portrait = phase_portrait(traj, build_kernel(config), config);
  for (std::size_t q = 0; q < traj.size(); ++q) {
    EXPECT_EQ(portrait.amplitude[q], 0.0);
    EXPECT_EQ(portrait.rate[q], 0.0);
  }
}

TEST(PhasePortrait, LinearSingleModeHasConstantAmplitude) {
  const auto config = config_with(32, 1.11, 0.0, 0.7);
  const auto kernel = build_kernel(config);
  const double k = 2.0 * kPi / config.length;
  ChainState initial;
  for (int i = 0; i < 32; ++i) {
    initial.amplitudes.push_back(std::polar(1.0, k * site_label(32, i) * config.spacing()));
  }
  IntegratorSettings settings;
  settings.t_final = 20.0;
  settings.n_samples = 200;
  const auto traj = integrate(initial, kernel, config, settings);
  const auto portrait = phase_portrait(traj, kernel, config);
  for (std::size_t q = 0; q < traj.size(); ++q) {
    EXPECT_NEAR(portrait.amplitude[q], 1.0, 1e-9);
    EXPECT_NEAR(portrait.rate[q], 0.0, 1e-13);
  }
}

TEST(PhasePortrait, RateMatchesCenteredDifferencesOnSmoothRun) {
  const auto config = config_with(32, 1.11, 1.0, 0.7);
  const auto kernel = build_kernel(config);
  double previous_error = 0.0;
  for (int n_samples : {500, 1000}) {
    IntegratorSettings settings;
    settings.t_final = 10.0;
    settings.n_samples = n_samples;
    settings.rel_tol = 1e-12;
    settings.abs_tol = 1e-14;
    const auto traj =
        integrate(rescale_to_norm(symmetric_profile(config), 4.0), kernel, config, settings);
    const auto portrait = phase_portrait(traj, kernel, config);
    const double dt = settings.t_final / n_samples;
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t q = 1; q + 1 < traj.size(); ++q) {
      const double fd = (portrait.amplitude[q + 1] - portrait.amplitude[q - 1]) / (2.0 * dt);
      worst = std::max(worst, std::abs(fd - portrait.rate[q]));
      scale = std::max(scale, std::abs(portrait.rate[q]));
    }
    EXPECT_LT(worst, 1e-3 * scale) << "Q=" << n_samples;
    if (previous_error > 0.0) {
      const double ratio = previous_error / worst;
      EXPECT_GT(ratio, 3.5);
      EXPECT_LT(ratio, 4.5);
    }
    previous_error = worst;
  }
}

TEST(PhaseDifference, IdenticalSitesGiveZero) {
  const auto traj = symmetric_run(12.5, 10.0, 100);
  for (double v : phase_difference(traj, 3, 3).values) EXPECT_EQ(v, 0.0);
}

TEST(PhaseDifference, EvenProfileHasNoInitialDifference) {
  const auto traj = symmetric_run(12.5, 1.0, 10);
  EXPECT_EQ(phase_difference(traj, 1, -1).values.front(), 0.0);
}

TEST(PhaseDifference, FullAngleConvention) {
  // Phase is atan2(Re, Im): i has phase 0, 1 has phase pi/2, -i has phase pi.
  const std::vector<Complex> a{{0, 1}, {1, 0}, {0, -1}, {-1, 1e-3}};
  const std::vector<Complex> b{{0, 1}, {0, 1}, {0, 1}, {1, 1e-3}};
  const auto traj = synthetic(4, 4, 1.0, [&](int n, int q) {
    if (n == 0) return a[q];
    if (n == 1) return b[q];
    return Complex{1.0, 0.0};
  });
  const auto df = phase_difference(traj);
  EXPECT_NEAR(df.values[0], 0.0, 1e-15);
  EXPECT_NEAR(df.values[1], kPi / 2, 1e-15);
  EXPECT_NEAR(df.values[2], kPi, 1e-15);
  // The raw difference is about -pi + small; folding keeps it in (-pi, pi].
  EXPECT_GT(df.values[3], -kPi);
  EXPECT_LE(df.values[3], kPi);
  EXPECT_NEAR(std::abs(df.values[3]), kPi, 3e-3);
  EXPECT_EQ(df.undefined_samples, 0u);

  const auto half = phase_difference(traj, 0, 1, PhaseConvention::half_plane);
  EXPECT_NEAR(half.values[1], kPi / 2, 1e-15);
  EXPECT_NEAR(half.values[2], 0.0, 1e-15);
}

TEST(PhaseDifference, VanishingAmplitudeIsUndefined) {
  const auto traj = synthetic(4, 3, 1.0, [](int n, int q) {
    return (n == 0 && q == 1) ? Complex{} : Complex{1.0, 0.5};
  });
  const auto df = phase_difference(traj);
  EXPECT_TRUE(std::isnan(df.values[1]));
  EXPECT_FALSE(std::isnan(df.values[0]));
  EXPECT_EQ(df.undefined_samples, 1u);
}

TEST(PhaseFlips, SyntheticSeries) {
  const std::vector<double> alternating{0.0, kPi, 0.0, kPi, 0.0};
  EXPECT_EQ(count_phase_flips(alternating), 4);
  const std::vector<double> constant(50, 0.4);
  EXPECT_EQ(count_phase_flips(constant), 0);
  const std::vector<double> wrap{3.0, -3.0, 3.1, 2.9};
  EXPECT_EQ(count_phase_flips(wrap), 2);
  // A large jump that stays away from +-pi is not a flip.
  const std::vector<double> inner{-1.0, 1.0, -1.0};
  EXPECT_EQ(count_phase_flips(inner, 1.5), 0);
  const std::vector<double> gap{0.0, kNaN, kPi, 0.0};
  EXPECT_EQ(count_phase_flips(gap), 1);
  EXPECT_EQ(count_phase_flips(std::vector<double>{}), 0);
}

TEST(PhaseFlips, ThresholdMustBeInsideOpenInterval) {
  const std::vector<double> df{0.0, 1.0};
  EXPECT_THROW((void)count_phase_flips(df, 0.0), std::invalid_argument);
  EXPECT_THROW((void)count_phase_flips(df, kPi), std::invalid_argument);
}

TEST(Dft, ConstantSeries) {
  const Complex c{0.3, -1.2};
  const auto traj = synthetic(4, 64, 0.1, [&](int, int) { return c; });
  const auto spectrum = time_power_spectrum(oscillator_series(traj, 0));
  ASSERT_EQ(spectrum.power.size(), 64u);
  EXPECT_NEAR(spectrum.power[0], std::norm(c), 1e-14);
  for (std::size_t j = 1; j < 64; ++j) EXPECT_LT(spectrum.power[j], 1e-28);
}

TEST(Dft, PureToneOccupiesOneBin) {
  const int q_count = 1000;
  const auto traj = synthetic(4, q_count, 0.1, [&](int, int q) {
    return std::polar(1.0, 2.0 * kPi * 5.0 * q / q_count);
  });
  const auto spectrum = time_power_spectrum(oscillator_series(traj, 0));
  for (int j = 0; j < q_count; ++j) {
    EXPECT_NEAR(spectrum.frequencies[j], 2.0 * kPi * j / q_count, 1e-15);
    if (j == 5) {
      EXPECT_NEAR(spectrum.power[j], 1.0, 1e-12);
    } else {
      EXPECT_LT(spectrum.power[j], 1e-24) << "j=" << j;
    }
  }
}

TEST(Dft, RoundTripAndParseval) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  ComplexVector series(1000);
  for (auto& z : series) z = {normal(rng), normal(rng)};
  const auto coefficients = time_dft(series);
  const auto back = inverse_time_dft(coefficients);
  double worst = 0.0;
  double total_time = 0.0;
  for (std::size_t q = 0; q < series.size(); ++q) {
    worst = std::max(worst, std::abs(back[q] - series[q]) / std::abs(series[q]));
    total_time += std::norm(series[q]);
  }
  EXPECT_LT(worst, 1e-10);
  double total_freq = 0.0;
  for (const auto& c : coefficients) total_freq += std::norm(c);
  EXPECT_LT(relative_error(total_freq, total_time / 1000.0), 1e-12);
}

TEST(Dft, NeedsTwoSamples) {
  OscillatorSeries one{0, {0.0}, {Complex{1.0, 0.0}}};
  EXPECT_THROW((void)time_power_spectrum(one), std::invalid_argument);
}

TEST(SpectralSummary, SingleBin) {
  PowerSpectrum s{std::vector<double>(8, 0.0), std::vector<double>(8, 0.0)};
  s.power[3] = 2.5;
  const auto summary = spectral_summary(s);
  EXPECT_EQ(summary.entropy, 0.0);
  EXPECT_EQ(summary.dominant_mode_count, 1);
}

TEST(SpectralSummary, UniformSpectrum) {
  PowerSpectrum s{std::vector<double>(1000, 0.0), std::vector<double>(1000, 0.7)};
  const auto summary = spectral_summary(s);
  EXPECT_NEAR(summary.entropy, std::log(1000.0), 1e-12);
  EXPECT_EQ(summary.dominant_mode_count, 1000);
}

TEST(SpectralSummary, FloorCountsModes) {
  PowerSpectrum s{std::vector<double>(4, 0.0), {1.0, 1e-3, 1e-7, 0.0}};
  EXPECT_EQ(spectral_summary(s).dominant_mode_count, 2);
  EXPECT_EQ(spectral_summary(s, 1e-8).dominant_mode_count, 3);
}

TEST(SpectralSummary, RejectsZeroSpectrum) {
  PowerSpectrum s{std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
  EXPECT_THROW((void)spectral_summary(s), std::invalid_argument);
}

TEST(Surface, UniformStateIsConstant) {
  const Complex c{0.2, 0.4};
  const auto traj = synthetic(8, 6, 1.0, [&](int, int) { return c; });
  const auto surface = surface_export(traj);
  EXPECT_EQ(surface.rows, 6u);
  EXPECT_EQ(surface.cols, 8u);
  for (double v : surface.values) EXPECT_EQ(v, std::norm(c));
  EXPECT_NEAR(localization_ratio(traj, 3), 1.0 / 8.0, 1e-15);
}

TEST(Surface, RowSumsEqualNormHistoryExactly) {
  const auto traj = symmetric_run(14.92, 20.0, 200);
  const auto surface = surface_export(traj);
  ASSERT_EQ(surface.rows, traj.size());
  for (std::size_t q = 0; q < surface.rows; ++q) {
    EXPECT_EQ(surface.row_sum(q), traj.m_history[q]);
  }
  for (std::size_t i = 0; i < surface.cols; ++i) {
    EXPECT_EQ(surface.at(7, i), std::norm(traj.samples[7].amplitudes[i]));
  }
}

TEST(DirectionSwitches, UniformStateHasNone) {
  const auto traj = synthetic(16, 100, 0.1, [](int, int q) { return std::polar(0.5, 0.01 * q); });
  EXPECT_EQ(direction_switches(traj), 0);
}

TEST(DirectionSwitches, StationarySymmetricRunHasNone) {
  const auto traj = symmetric_run(4.0, 100.0, 1000);
  EXPECT_EQ(direction_switches(traj), 0);
}

TEST(DirectionSwitches, TranslatingEnvelopeHasNone) {
  const int n_sites = 32;
  for (double velocity : {0.05, -0.13}) {
    const auto traj = synthetic(n_sites, 400, 0.1, [&](int n, int q) {
      double dist = std::remainder(n - velocity * q, static_cast<double>(n_sites));
      return Complex{std::exp(-dist * dist / 8.0), 0.0};
    });
    EXPECT_EQ(direction_switches(traj), 0) << "v=" << velocity;
    const auto angle = center_of_norm_angle(traj);
    const double expected = 2.0 * kPi * velocity * 399 / n_sites;
    EXPECT_NEAR(angle.back() - angle.front(), expected, 1e-6);
  }
}

TEST(DirectionSwitches, OscillatingEnvelopeSwitches) {
  const int n_sites = 32;
  const auto traj = synthetic(n_sites, 400, 0.1, [&](int n, int q) {
    const double center = 4.0 * std::sin(2.0 * kPi * q / 100.0);
    const double dist = std::remainder(n - center, static_cast<double>(n_sites));
    return Complex{std::exp(-dist * dist / 8.0), 0.0};
  });
  // Four periods: the direction reverses twice per period, minus the first turn.
  EXPECT_EQ(direction_switches(traj), 8);
  EXPECT_THROW((void)direction_switches(traj, 0), std::invalid_argument);
}

TEST(Indicators, InvariantUnderGlobalPhase) {
  const auto traj = symmetric_run(14.92, 100.0, 1000);
  Trajectory rotated = traj;
  const Complex phase = std::polar(1.0, 1.234);
  for (auto& s : rotated.samples) {
    for (auto& z : s.amplitudes) z *= phase;
  }
  const auto base = chaos_indicators(traj);
  const auto turned = chaos_indicators(rotated);
  EXPECT_EQ(base.flip_count, turned.flip_count);
  EXPECT_NEAR(base.spectral_entropy, turned.spectral_entropy, 1e-10);
  EXPECT_EQ(base.dominant_mode_count, turned.dominant_mode_count);
  EXPECT_EQ(base.direction_switches, turned.direction_switches);

  const auto df = phase_difference(traj).values;
  const auto df_rot = phase_difference(rotated).values;
  for (std::size_t q = 0; q < df.size(); ++q) {
    const double gap = std::remainder(df[q] - df_rot[q], 2.0 * kPi);
    EXPECT_NEAR(gap, 0.0, 1e-9) << "q=" << q;
  }
}

TEST(Indicators, EntropyWithinBounds) {
  const auto traj = symmetric_run(12.5, 100.0, 1000);
  const auto ind = chaos_indicators(traj);
  EXPECT_GE(ind.flip_count, 0);
  EXPECT_GE(ind.spectral_entropy, 0.0);
  EXPECT_LE(ind.spectral_entropy, std::log(1000.0));
  EXPECT_GE(ind.dominant_mode_count, 1);
}

}  // namespace
}  // namespace adnls
