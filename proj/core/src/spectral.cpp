#include "adnls/spectral.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "adnls/special_functions.hpp"

namespace adnls::spectral {

namespace {

using special::near_integer;
using special::riemann_zeta;

constexpr double kPi = std::numbers::pi;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// sum_{n > N} n^{-s} by Euler-Maclaurin at x = N.
double zeta_tail(double s, double n) {
  static constexpr std::array<double, 7> kBernoulli = {
      1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  double tail = std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(n, -s);
  // (s)_{2j-1} n^{-s-2j+1} / (2j)!
  double rising = s;  // (s)_1
  double factorial = 2.0;
  double power = std::pow(n, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    tail += kBernoulli[j] * rising * power / factorial;
    const double m = 2.0 * static_cast<double>(j) + 1.0;
    rising *= (s + m) * (s + m + 1.0);
    factorial *= (m + 2.0) * (m + 3.0);
    power /= n * n;
  }
  return tail;
}

// sum_{n >= N} n^{-s} z^n for z = e^{i theta}, theta != 0, via
//   z^N sum_m [f^{(m)}(N) / m!] Li_{-m}(z),   f(x) = x^{-s},
// where Li_{-m}(z) = sum_{n>=0} n^m z^n = P_m(z) / (1-z)^{m+1} and
// P_{m+1} = z [(1-z) P_m' + (m+1) P_m]. The expansion is asymptotic; it is
// truncated at its smallest term.
Complex oscillatory_tail(double s, double n, double theta, double tol) {
  constexpr int kMaxOrder = 24;
  const Complex z = std::polar(1.0, theta);
  const Complex one_minus_z = 1.0 - z;
  std::vector<double> poly{1.0};  // coefficients of P_m, ascending powers
  Complex inv_pow = 1.0 / one_minus_z;  // (1-z)^{-(m+1)}
  double taylor = std::pow(n, -s);      // f^{(m)}(N) / m!
  Complex total{0.0, 0.0};
  double previous = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= kMaxOrder; ++m) {
    Complex p{0.0, 0.0};
    for (std::size_t c = poly.size(); c-- > 0;) p = p * z + poly[c];
    const Complex term = taylor * p * inv_pow;
    const double magnitude = std::abs(term);
    if (magnitude > previous) break;
    total += term;
    if (magnitude < 1e-3 * tol) break;
    previous = magnitude;

    // P_{m+1} = z [(1-z) P_m' + (m+1) P_m]
    std::vector<double> shifted(poly.size() + 1, 0.0);
    for (std::size_t c = 0; c < poly.size(); ++c) {
      const double coeff = poly[c];
      // z * (1 - z) * c p_c z^{c-1} = c p_c (z^c - z^{c+1})
      shifted[c] += static_cast<double>(c) * coeff;
      shifted[c + 1] -= static_cast<double>(c) * coeff;
      // z * (m+1) p_c z^c
      shifted[c + 1] += static_cast<double>(m + 1) * coeff;
    }
    while (shifted.size() > 1 && shifted.back() == 0.0) shifted.pop_back();
    poly = std::move(shifted);
    inv_pow /= one_minus_z;
    taylor *= -(s + m) / ((m + 1.0) * n);
  }
  return std::polar(1.0, theta * n) * total;
}

void require_non_integer(double alpha, const char* what) {
  if (!(alpha > 0.0) || near_integer(alpha)) {
    throw std::domain_error(std::string(what) + ": alpha must be positive and non-integer, got " +
                            std::to_string(alpha));
  }
}

}  // namespace

double j_hat_direct(double k, double alpha, double dx, double tol) {
  if (!(alpha > 0.0)) throw std::domain_error("j_hat_direct: alpha must be positive");
  if (!(tol > 0.0)) throw std::domain_error("j_hat_direct: tol must be positive");
  const double s = 1.0 + alpha;
  // cos is 2 pi periodic in k dx and even
  double theta = std::remainder(k * dx, 2.0 * kPi);
  theta = std::abs(theta);

  CompensatedSum sum;
  if (theta < 1e-15) {
    constexpr int kTerms = 1000;
    for (int n = 1; n <= kTerms; ++n) sum.add(2.0 * std::pow(static_cast<double>(n), -s));
    sum.add(2.0 * zeta_tail(s, kTerms));
    return sum.value();
  }

  // Enough explicit terms that the tail expansion converges quickly:
  // successive terms shrink roughly like (s + m) / (N |1 - z|).
  const double gap = 2.0 * std::sin(0.5 * theta);
  const double wanted = std::ceil(64.0 / gap);
  const int terms = static_cast<int>(std::min(std::max(wanted, 1000.0), 1.0e8));
  for (int n = 1; n <= terms; ++n) {
    sum.add(2.0 * std::cos(theta * n) * std::pow(static_cast<double>(n), -s));
  }
  sum.add(2.0 * oscillatory_tail(s, terms + 1.0, theta, tol).real());
  return sum.value();
}

double a_alpha(double alpha) {
  require_non_integer(alpha, "a_alpha");
  return 2.0 * std::tgamma(-alpha) * std::cos(0.5 * kPi * alpha);
}

double j_hat_expansion(double k, double alpha, double dx, int n_terms) {
  require_non_integer(alpha, "j_hat_expansion");
  const double kdx = k * dx;
  if (!(std::abs(kdx) < 1.0)) {
    throw std::domain_error("j_hat_expansion: requires |k dx| < 1, got " + std::to_string(kdx));
  }
  if (n_terms < 0) throw std::domain_error("j_hat_expansion: n_terms must be >= 0");
  double value = a_alpha(alpha) * std::pow(std::abs(kdx), alpha);
  // dx^{2n} (-k^2)^n / (2n)! = (-(k dx)^2)^n / (2n)!
  double factor = 1.0;
  const double x2 = kdx * kdx;
  for (int n = 0; n <= n_terms; ++n) {
    value += 2.0 * riemann_zeta(1.0 + alpha - 2.0 * n) * factor;
    factor *= -x2 / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
  }
  return value;
}

namespace {

void require_symbol_alpha(double alpha, const char* what) {
  const bool in_range = (alpha > 0.0 && alpha < 2.0) || (alpha > 2.0 && alpha < 4.0);
  if (!in_range || near_integer(alpha)) {
    throw std::domain_error(std::string(what) + ": alpha must lie in (0,2) or (2,4), excluding 1 "
                            "and 3, got " + std::to_string(alpha));
  }
}

}  // namespace

double t_hat_symbol(double k, double alpha, double dx) {
  require_symbol_alpha(alpha, "t_hat_symbol");
  const double ak = a_alpha(alpha) * std::pow(std::abs(k), alpha);
  const double k2 = riemann_zeta(alpha - 1.0) * k * k;
  if (alpha < 2.0) return ak - std::pow(std::abs(dx), 2.0 - alpha) * k2;
  return std::pow(std::abs(dx), alpha - 2.0) * ak - k2;
}

double crossover_k0(double alpha, double dx) {
  require_symbol_alpha(alpha, "crossover_k0");
  return std::pow(std::abs(a_alpha(alpha) / riemann_zeta(alpha - 1.0)), 1.0 / (2.0 - alpha)) /
         std::abs(dx);
}

double fnls_coefficient_g(double alpha, double j_absolute, double dx) {
  if (!(alpha > 0.0 && alpha < 2.0) || near_integer(alpha)) {
    throw std::domain_error("fnls_coefficient_g: alpha must lie in (0,2) excluding 1");
  }
  return j_absolute * std::pow(std::abs(dx), alpha) * a_alpha(alpha);
}

double lattice_dispersion(double k, const CouplingKernel& kernel, const LatticeConfig& config) {
  const double dx = config.spacing();
  double omega = 0.0;
  for (std::size_t l = 1; l <= kernel.weights.size(); ++l) {
    const double half = 0.5 * k * static_cast<double>(l) * dx;
    const double s = std::sin(half);
    omega += kernel.weights[l - 1] * 4.0 * s * s;  // 2 (1 - cos 2h) = 4 sin^2 h
  }
  return omega;
}

std::vector<DispersionRow> dispersion_table(const LatticeConfig& config, int n_terms) {
  const CouplingKernel kernel = build_kernel(config);
  const double dx = config.spacing();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const bool expansion_ok = !near_integer(config.alpha);
  const bool symbol_ok = expansion_ok && config.alpha < 4.0 && config.alpha != 2.0;

  std::vector<DispersionRow> rows;
  for (int m = 0; m <= config.n_sites / 2; ++m) {
    const double k = 2.0 * kPi * m / config.length;
    DispersionRow row;
    row.k = k;
    row.j_hat_direct = j_hat_direct(k, config.alpha, dx);
    row.j_hat_expansion =
        (expansion_ok && std::abs(k * dx) < 1.0) ? j_hat_expansion(k, config.alpha, dx, n_terms)
                                                 : nan;
    row.t_hat = symbol_ok ? t_hat_symbol(k, config.alpha, dx) : nan;
    row.lattice_dispersion = lattice_dispersion(k, kernel, config);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace adnls::spectral
