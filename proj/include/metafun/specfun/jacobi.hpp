#pragma once

// Jacobi elliptic functions sn, cn, dn of complex argument, parameter
// m = k^2 in (0, 1), via Jacobi theta quotients. The quarter periods K, K'
// come from the arithmetic-geometric mean and fix the nome q = exp(-pi K'/K).
// Arguments are first reduced into the fundamental cell
// Re u in [-2K, 2K], Im u in [-K', K'] so the theta series converge quickly.

#include <cmath>
#include <limits>

#include "metafun/error.hpp"
#include "metafun/specfun/common.hpp"

namespace metafun {

namespace specfun {
/// Guard radius around the pole lattice iK' + 2mK + 2niK'.
inline constexpr double kJacobiPoleRadius = 1e-8;
}  // namespace specfun

inline double arithmetic_geometric_mean(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (std::abs(an - bn) <= 4.0 * std::numeric_limits<double>::epsilon() * an) return 0.5 * (an + bn);
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

/// Complete elliptic integral of the first kind K(m), m = k^2 in [0, 1).
inline double elliptic_k(double m) {
  if (!(m >= 0.0 && m < 1.0)) throw DomainError("elliptic_k: m must lie in [0, 1)");
  return specfun::detail::kPi / (2.0 * arithmetic_geometric_mean(1.0, std::sqrt(1.0 - m)));
}

struct JacobiTriple {
  Complex sn;
  Complex cn;
  Complex dn;
};

/// Precomputed periods and theta constants for one parameter m.
class JacobiModulus {
 public:
  explicit JacobiModulus(double m) : m_(m) {
    if (!(m > 0.0 && m < 1.0)) throw DomainError("jacobi: k^2 must lie in (0, 1)");
    k_ = elliptic_k(m);
    kp_ = elliptic_k(1.0 - m);
    log_q_ = -specfun::detail::kPi * kp_ / k_;
    theta2_0_ = theta2(Complex(0.0));
    theta3_0_ = theta3(Complex(0.0));
    theta4_0_ = theta4(Complex(0.0));
  }

  double m() const { return m_; }
  double quarter_period() const { return k_; }
  double imag_quarter_period() const { return kp_; }
  double nome() const { return std::exp(log_q_); }

  JacobiTriple eval(Complex u) const {
    using specfun::detail::kPi;
    // Shift by multiples of 2K + 2iK' (cn invariant, sn and dn flip sign),
    // then by multiples of 4K (all invariant).
    const double j = std::nearbyint(u.imag() / (2.0 * kp_));
    u -= j * Complex(2.0 * k_, 2.0 * kp_);
    const double r = std::nearbyint(u.real() / (4.0 * k_));
    u -= r * 4.0 * k_;
    const double flip = (static_cast<long long>(j) % 2 == 0) ? 1.0 : -1.0;

    for (int mm = -1; mm <= 1; ++mm) {
      for (double sgn : {-1.0, 1.0}) {
        if (std::abs(u - Complex(2.0 * mm * k_, sgn * kp_)) < specfun::kJacobiPoleRadius) {
          throw PoleError("jacobi: argument on the pole lattice");
        }
      }
    }

    const Complex v = kPi * u / (2.0 * k_);
    const Complex t1 = theta1(v);
    const Complex t2 = theta2(v);
    const Complex t3 = theta3(v);
    const Complex t4 = theta4(v);
    JacobiTriple out;
    out.sn = flip * (theta3_0_ / theta2_0_) * t1 / t4;
    out.cn = (theta4_0_ / theta2_0_) * t2 / t4;
    out.dn = flip * (theta4_0_ / theta3_0_) * t3 / t4;
    return out;
  }

 private:
  // Series in the nome; v has |Im v| <= pi K' / (2K) after reduction.
  Complex theta1(Complex v) const {
    Complex sum = 0.0;
    for (int n = 0; n < 200; ++n) {
      const double e = (n + 0.5) * (n + 0.5) * log_q_;
      const Complex term = std::exp(e) * std::sin((2.0 * n + 1.0) * v);
      sum += (n % 2 == 0) ? term : -term;
      if (std::abs(term) <= 1e-18 * std::abs(sum) && n > 1) break;
    }
    return 2.0 * sum;
  }
  Complex theta2(Complex v) const {
    Complex sum = 0.0;
    for (int n = 0; n < 200; ++n) {
      const double e = (n + 0.5) * (n + 0.5) * log_q_;
      const Complex term = std::exp(e) * std::cos((2.0 * n + 1.0) * v);
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum) && n > 1) break;
    }
    return 2.0 * sum;
  }
  Complex theta3(Complex v) const { return theta34(v, false); }
  Complex theta4(Complex v) const { return theta34(v, true); }
  Complex theta34(Complex v, bool alternate) const {
    Complex sum = 0.0;
    for (int n = 1; n < 200; ++n) {
      const Complex term = std::exp(n * n * log_q_) * std::cos(2.0 * n * v);
      sum += (alternate && n % 2 == 1) ? -term : term;
      if (std::abs(term) <= 1e-18 * std::abs(1.0 + 2.0 * sum) && n > 1) break;
    }
    return 1.0 + 2.0 * sum;
  }

  double m_;
  double k_ = 0.0;
  double kp_ = 0.0;
  double log_q_ = 0.0;
  Complex theta2_0_;
  Complex theta3_0_;
  Complex theta4_0_;
};

inline JacobiTriple eval_jacobi(Complex s, double k_sq) { return JacobiModulus(k_sq).eval(s); }

inline Complex eval_cn(Complex s, double k_sq) { return eval_jacobi(s, k_sq).cn; }
inline Complex eval_sn(Complex s, double k_sq) { return eval_jacobi(s, k_sq).sn; }
inline Complex eval_dn(Complex s, double k_sq) { return eval_jacobi(s, k_sq).dn; }

}  // namespace metafun
