#pragma once

// Bessel function of the first kind J_p(z) for integer order and complex
// argument. Ascending series for |z| <= kBesselSeriesRadius; above it,
// Miller's backward recurrence normalised by the generating-function identity
//   exp(-+ i z) = J_0(z) + 2 sum_{k>=1} (-+ i)^k J_k(z),
// with the sign chosen so that no cancellation occurs for large |Im z|.

#include <cmath>
#include <cstdlib>
#include <limits>

#include "metafun/error.hpp"
#include "metafun/specfun/common.hpp"

namespace metafun {

namespace specfun {
inline constexpr double kBesselSeriesRadius = 12.0;
}  // namespace specfun

namespace specfun::detail {

inline Complex bessel_j_series(int p, Complex z) {
  // p >= 0
  const Complex half = 0.5 * z;
  Complex term = 1.0;
  for (int i = 1; i <= p; ++i) term *= half / static_cast<double>(i);
  const Complex q = -half * half;
  Complex sum = term;
  const double az = std::abs(z);
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + p));
    sum += term;
    if (k > az && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

inline Complex bessel_j_miller(int p, Complex z) {
  // p >= 0, |z| large enough that the series is not used.
  const double az = std::abs(z);
  int start = static_cast<int>(std::ceil(std::max(az, static_cast<double>(p)) +
                                         14.0 * std::cbrt(az) + 30.0));
  if (start % 2 == 1) ++start;

  const bool upper = z.imag() >= 0.0;
  // weight_k = 2 (-i)^k in the upper half-plane, 2 i^k in the lower.
  const Complex unit = upper ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
  auto weight = [&](int k) {
    switch (k % 4) {
      case 0: return Complex(2.0, 0.0);
      case 1: return 2.0 * unit;
      case 2: return Complex(-2.0, 0.0);
      default: return -2.0 * unit;
    }
  };

  Complex next = 0.0;    // J_{k+1}
  Complex cur = 1e-280;  // J_k
  Complex norm = 0.0;
  Complex at_p = 0.0;
  const Complex two_over_z = 2.0 / z;
  for (int k = start; k >= 1; --k) {
    if (k == p) at_p = cur;
    norm += weight(k) * cur;
    const Complex prev = static_cast<double>(k) * two_over_z * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      at_p *= 1e-250;
    }
  }
  // cur now holds the unnormalised J_0.
  if (p == 0) at_p = cur;
  norm += cur;
  const Complex exact = upper ? std::exp(Complex(z.imag(), -z.real()))
                              : std::exp(Complex(-z.imag(), z.real()));
  return at_p * (exact / norm);
}

}  // namespace specfun::detail

/// J_p(s) for integer p. Throws OverflowError when |Im s| is so large that
/// the result is not representable.
inline Complex eval_bessel_j(int p, Complex s) {
  using namespace specfun::detail;
  if (std::abs(s.imag()) > 700.0) throw OverflowError("bessel_j: |Im s| too large");
  const int order = std::abs(p);
  const double sign = (p < 0 && order % 2 == 1) ? -1.0 : 1.0;
  if (s == Complex(0.0, 0.0)) return order == 0 ? 1.0 : 0.0;
  Complex value = (std::abs(s) <= specfun::kBesselSeriesRadius) ? bessel_j_series(order, s)
                                                                 : bessel_j_miller(order, s);
  if (s.imag() == 0.0) value.imag(0.0);
  return sign * value;
}

}  // namespace metafun
