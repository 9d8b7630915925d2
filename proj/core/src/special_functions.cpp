#include "adnls/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace adnls::special {

namespace {

// Borwein (2000), algorithm 2: error < 3 / (3 + sqrt 8)^n for real s > 0.
// n = 32 puts the truncation error under 1e-23.
constexpr int kBorweinTerms = 32;

std::array<double, kBorweinTerms + 1> borwein_coefficients() {
  std::array<double, kBorweinTerms + 1> d{};
  const int n = kBorweinTerms;
  // d_k = n sum_{i=0}^{k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  double term = 1.0 / n;  // i = 0: (n-1)! / n! = 1/n
  double sum = term;
  d[0] = n * sum;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1) * (2.0 * i));
    sum += term;
    d[static_cast<std::size_t>(i)] = n * sum;
  }
  return d;
}

}  // namespace

bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) <= tol; }

double dirichlet_eta(double s) {
  if (!(s > 0.0)) throw std::domain_error("dirichlet_eta: requires s > 0");
  static const auto d = borwein_coefficients();
  const double dn = d[kBorweinTerms];
  double sum = 0.0;
  for (int k = 0; k < kBorweinTerms; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (dn - d[static_cast<std::size_t>(k)]) * std::pow(k + 1.0, -s);
  }
  return sum / dn;
}

double riemann_zeta(double s) {
  if (s == 1.0) throw std::domain_error("riemann_zeta: pole at s = 1");
  if (s >= 0.5) {
    if (s > 60.0) return 1.0 + std::pow(2.0, -s);  // remaining terms below 1e-29
    return dirichlet_eta(s) / (1.0 - std::pow(2.0, 1.0 - s));
  }
  // Near s = 0 the reflected argument rounds onto the pole.
  if (std::abs(s) < 1e-8) return -0.5 - 0.5 * std::log(2.0 * std::numbers::pi) * s;
  // Trivial zeros at negative even integers.
  if (s < 0.0 && near_integer(s, 0.0) && std::fmod(s, 2.0) == 0.0) return 0.0;
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
  const double reflected = 1.0 - s;
  const double log_prefactor = s * std::numbers::ln2 + (s - 1.0) * std::log(std::numbers::pi) +
                               std::lgamma(reflected);
  return std::exp(log_prefactor) * std::sin(0.5 * std::numbers::pi * s) * riemann_zeta(reflected);
}

}  // namespace adnls::special
