#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace metafun {

using Complex = std::complex<double>;

namespace specfun::detail {

inline constexpr double kPi = std::numbers::pi;

// sin(pi x) and cos(pi x) with the argument reduced exactly before scaling,
// so relative accuracy survives near integers.
inline double sinpi(double x) {
  double r = x - 2.0 * std::nearbyint(0.5 * x);  // r in [-1, 1]
  double sign = 1.0;
  if (r < 0.0) {
    r = -r;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(kPi * r);
}

inline double cospi(double x) {
  double r = std::abs(x - 2.0 * std::nearbyint(0.5 * x));  // r in [0, 1]
  if (r == 0.5) return 0.0;
  if (r > 0.5) return -std::sin(kPi * (r - 0.5));
  return std::sin(kPi * (0.5 - r));
}

inline Complex sinpi(Complex z) {
  const double y = kPi * z.imag();
  return {sinpi(z.real()) * std::cosh(y), cospi(z.real()) * std::sinh(y)};
}

/// log(sin(pi z)) on a branch suitable for exponentiation; stable for large |Im z|.
inline Complex log_sinpi(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (std::abs(y) < 8.0) return std::log(sinpi(z));
  const Complex e2 = std::exp(Complex(-2.0 * kPi * std::abs(y), 2.0 * kPi * x * (y > 0 ? 1.0 : -1.0)));
  if (y > 0.0) {
    // sin(pi z) = exp(-i pi z) (1 - exp(2 i pi z)) / (-2i)
    return Complex(kPi * y - std::log(2.0), -kPi * x + 0.5 * kPi) + std::log(1.0 - e2);
  }
  // sin(pi z) = exp(i pi z) (1 - exp(-2 i pi z)) / (2i)
  return Complex(-kPi * y - std::log(2.0), kPi * x - 0.5 * kPi) + std::log(1.0 - e2);
}

inline double relative_error(Complex got, Complex want) {
  const double scale = std::abs(want);
  const double diff = std::abs(got - want);
  return scale == 0.0 ? diff : diff / scale;
}

}  // namespace specfun::detail
}  // namespace metafun
