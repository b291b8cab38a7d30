#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "metafun/error.hpp"

namespace metafun::numerics {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Brent's method (zeroin) on a bracket [a, b] with f(a), f(b) of opposite sign.
/// Converges to within xtol + 4 eps |x|; stops early on an exact zero.
template <class F>
RootResult brent(F&& f, double a, double b, double fa, double fb, double xtol = 0.0,
                 int max_iter = 200) {
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("brent: endpoints do not bracket a sign change");
  }
  const double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 1; it <= max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return {b, fb, it};
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw BracketError("brent: iteration budget exhausted");
}

template <class F>
RootResult brent(F&& f, double a, double b, double xtol = 0.0, int max_iter = 200) {
  const double fa = f(a);
  const double fb = f(b);
  return brent(f, a, b, fa, fb, xtol, max_iter);
}

struct Bracket {
  double a = 0.0;
  double b = 0.0;
  double fa = 0.0;
  double fb = 0.0;
};

/// Scans [a, b] left to right on `cells` equal subintervals and returns the
/// first subinterval whose endpoint values change sign (or hit zero).
template <class F>
std::optional<Bracket> first_sign_change(F&& f, double a, double b, int cells) {
  double x0 = a;
  double f0 = f(x0);
  if (f0 == 0.0) return Bracket{x0, x0, f0, f0};
  for (int i = 1; i <= cells; ++i) {
    const double x1 = (i == cells) ? b : a + (b - a) * static_cast<double>(i) / cells;
    const double f1 = f(x1);
    if (f1 == 0.0 || (f0 > 0.0) != (f1 > 0.0)) return Bracket{x0, x1, f0, f1};
    x0 = x1;
    f0 = f1;
  }
  return std::nullopt;
}

}  // namespace metafun::numerics
