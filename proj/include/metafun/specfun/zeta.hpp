#pragma once

// Riemann zeta function.
//
//  * eval_zeta: Euler-Maclaurin summation with up to 30 Bernoulli terms for
//    Re s >= 0, functional equation (in log form) for Re s < 0.
//  * eval_zeta_critical_sq: |zeta(1/2 + it)|^2. Euler-Maclaurin below
//    kRiemannSiegelFrom, Riemann-Siegel Z(t) with corrections C0..C4 above.
//    The Riemann-Siegel phases are formed in long double so that the
//    cos(theta(t) - t log n) arguments stay accurate up to t ~ 1e6.

#include <cmath>
#include <cstddef>
#include <vector>

#include "metafun/error.hpp"
#include "metafun/specfun/common.hpp"
#include "metafun/specfun/detail/zeta_tables.hpp"
#include "metafun/specfun/gamma.hpp"

namespace metafun {

namespace specfun {
/// Ordinate above which the critical-line evaluator uses Riemann-Siegel.
inline constexpr double kRiemannSiegelFrom = 600.0;
}  // namespace specfun

namespace specfun::detail {

inline Complex zeta_euler_maclaurin(Complex s) {
  const int n_terms = std::max(8, static_cast<int>(std::ceil((std::abs(s) + 60.0) / kPi)));
  Complex sum = 0.0;
  for (int n = n_terms - 1; n >= 1; --n) {
    sum += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double big_n = static_cast<double>(n_terms);
  const Complex n_pow = std::exp(-s * std::log(big_n));  // N^{-s}
  Complex tail = big_n * n_pow / (s - 1.0) + 0.5 * n_pow;
  Complex rising = s;               // s (s+1) ... (s+2k-2)
  Complex power = n_pow / big_n;    // N^{-s-2k+1}
  for (std::size_t k = 1; k <= kBernoulliOverFactorial.size(); ++k) {
    const Complex term = kBernoulliOverFactorial[k - 1] * rising * power;
    tail += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum + tail)) break;
    const double kk = static_cast<double>(k);
    rising *= (s + (2.0 * kk - 1.0)) * (s + 2.0 * kk);
    power /= big_n * big_n;
  }
  return sum + tail;
}

// Psi^{(d)}(p) for Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p), from the
// even Taylor series about p = 1/2.
inline double psi_derivative(double z, int d) {
  double acc = 0.0;
  for (int i = static_cast<int>(kPsiEvenTaylor.size()) - 1; i >= 0; --i) {
    const int j = 2 * i;
    if (j < d) break;
    double falling = 1.0;
    for (int r = 0; r < d; ++r) falling *= static_cast<double>(j - r);
    acc = acc * z * z + kPsiEvenTaylor[static_cast<std::size_t>(i)] * falling;
  }
  // The Horner loop above accumulated in powers of z^2 starting at the lowest
  // admissible even index; shift by the parity of d.
  const int lowest = (d % 2 == 0) ? d : d + 1;
  return acc * std::pow(z, lowest - d);
}

inline const std::vector<long double>& log_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> v(4097);
    for (std::size_t n = 1; n < v.size(); ++n) v[n] = std::log(static_cast<long double>(n));
    return v;
  }();
  return table;
}

inline long double siegel_theta(long double t) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double t2 = t * t;
  return 0.5L * t * std::log(t / (2.0L * pi)) - 0.5L * t - pi / 8.0L + 1.0L / (48.0L * t) +
         7.0L / (5760.0L * t * t2) + 31.0L / (80640.0L * t * t2 * t2) +
         127.0L / (430080.0L * t * t2 * t2 * t2);
}

/// Hardy's Z(t) by the Riemann-Siegel formula with corrections C0..C4.
inline double riemann_siegel_z(double t) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double two_pi = 2.0L * pi;
  const long double tl = t;
  const long double a = std::sqrt(tl / two_pi);
  const long long n_main = static_cast<long long>(std::floor(a));
  const double p = static_cast<double>(a - static_cast<long double>(n_main));
  const long double theta = siegel_theta(tl);
  const auto& logs = log_table();

  double sum = 0.0;
  for (long long n = n_main; n >= 1; --n) {
    const long double ln_n = (static_cast<std::size_t>(n) < logs.size())
                                 ? logs[static_cast<std::size_t>(n)]
                                 : std::log(static_cast<long double>(n));
    long double phase = theta - tl * ln_n;
    phase -= two_pi * std::nearbyint(phase / two_pi);
    sum += std::cos(static_cast<double>(phase)) / std::sqrt(static_cast<double>(n));
  }

  const double z = p - 0.5;
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  const double pi8 = pi4 * pi4;
  const double d0 = psi_derivative(z, 0);
  const double c0 = d0;
  const double c1 = -psi_derivative(z, 3) / (96.0 * pi2);
  const double c2 = psi_derivative(z, 2) / (64.0 * pi2) + psi_derivative(z, 6) / (18432.0 * pi4);
  const double c3 = -psi_derivative(z, 1) / (64.0 * pi2) - psi_derivative(z, 5) / (3840.0 * pi4) -
                    psi_derivative(z, 9) / (5308416.0 * pi6);
  const double c4 = d0 / (128.0 * pi2) + 19.0 * psi_derivative(z, 4) / (24576.0 * pi4) +
                    11.0 * psi_derivative(z, 8) / (5898240.0 * pi6) +
                    psi_derivative(z, 12) / (2038431744.0 * pi8);
  const double inv_a = 1.0 / static_cast<double>(a);
  const double correction =
      c0 + inv_a * (c1 + inv_a * (c2 + inv_a * (c3 + inv_a * c4)));
  const double sign = (n_main % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
  return 2.0 * sum + sign * std::sqrt(inv_a) * correction;
}

}  // namespace specfun::detail

/// Riemann zeta(s). Throws PoleError at s = 1.
inline Complex eval_zeta(Complex s) {
  using namespace specfun::detail;
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  Complex value;
  if (s.real() < 0.0) {
    const Complex reflected = zeta_euler_maclaurin(1.0 - s);
    const Complex log_factor = s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
                               log_sinpi(0.5 * s) + log_gamma(1.0 - s);
    value = std::exp(log_factor) * reflected;
  } else {
    value = zeta_euler_maclaurin(s);
  }
  if (s.imag() == 0.0) value.imag(0.0);
  return value;
}

/// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it), real-valued; t >= 10.
inline double eval_hardy_z(double t) {
  using namespace specfun::detail;
  if (!(t >= 10.0)) throw DomainError("hardy_z: t must be >= 10");
  if (t >= specfun::kRiemannSiegelFrom) return riemann_siegel_z(t);
  const Complex zeta = zeta_euler_maclaurin(Complex(0.5, t));
  const double theta = static_cast<double>(siegel_theta(static_cast<long double>(t)));
  return (std::polar(1.0, theta) * zeta).real();
}

/// |zeta(1/2 + it)|^2 for t >= 0.
inline double eval_zeta_critical_sq(double t) {
  using namespace specfun::detail;
  if (!(t >= 0.0)) throw DomainError("zeta_critical_sq: t must be >= 0");
  if (t >= specfun::kRiemannSiegelFrom) {
    const double z = riemann_siegel_z(t);
    return z * z;
  }
  return std::norm(zeta_euler_maclaurin(Complex(0.5, t)));
}

}  // namespace metafun
