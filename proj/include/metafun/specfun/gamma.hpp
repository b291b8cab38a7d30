#pragma once

// Complex Gamma function: Lanczos approximation (g = 7, nine terms) in the
// right half-plane, reflection formula for Re s < 1/2. Everything is carried
// in logarithmic form so that overflow is detected instead of producing inf.

#include <array>
#include <cmath>
#include <limits>

#include "metafun/error.hpp"
#include "metafun/specfun/common.hpp"

namespace metafun {

namespace specfun::detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex x = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    x += kLanczosCoeff[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline bool is_gamma_pole(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && std::nearbyint(s.real()) == s.real();
}

}  // namespace specfun::detail

/// log Gamma(s) on a branch that agrees with Gamma after exponentiation
/// (not necessarily the principal log-gamma branch).
inline Complex log_gamma(Complex s) {
  using namespace specfun::detail;
  if (is_gamma_pole(s)) throw PoleError("gamma: pole at non-positive integer");
  if (s.real() < 0.5) {
    return std::log(kPi) - log_sinpi(s) - log_gamma_right(1.0 - s);
  }
  return log_gamma_right(s);
}

/// Gamma(s). Throws PoleError at s in {0, -1, -2, ...} and OverflowError
/// when |Gamma(s)| is not representable.
inline Complex eval_gamma(Complex s) {
  const Complex lg = log_gamma(s);
  if (lg.real() > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("gamma: |Gamma(s)| exceeds double range");
  }
  if (s.imag() == 0.0) {
    // Real axis: keep the result exactly real.
    const double sign = std::cos(lg.imag()) < 0.0 ? -1.0 : 1.0;
    return {sign * std::exp(lg.real()), 0.0};
  }
  return std::exp(lg);
}

}  // namespace metafun
