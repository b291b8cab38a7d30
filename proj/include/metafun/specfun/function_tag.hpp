#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "metafun/error.hpp"
#include "metafun/specfun/bessel.hpp"
#include "metafun/specfun/gamma.hpp"
#include "metafun/specfun/jacobi.hpp"
#include "metafun/specfun/zeta.hpp"

namespace metafun {

enum class FunctionKind { Zeta, Gamma, JacobiCn, BesselJ };

/// One of the four function symbols zeta, Gamma, cn(., k), J_p together with
/// its fixed parameter (k^2 for cn, the order p for J_p).
struct FunctionTag {
  FunctionKind kind = FunctionKind::Zeta;
  double k_sq = 0.5;
  int p = 0;

  static FunctionTag zeta() { return {FunctionKind::Zeta, 0.5, 0}; }
  static FunctionTag gamma() { return {FunctionKind::Gamma, 0.5, 0}; }
  static FunctionTag jacobi_cn(double k_sq) {
    if (!(k_sq > 0.0 && k_sq < 1.0)) throw DomainError("cn: k^2 must lie in (0, 1)");
    return {FunctionKind::JacobiCn, k_sq, 0};
  }
  static FunctionTag bessel_j(int p) { return {FunctionKind::BesselJ, 0.5, p}; }

  /// Equality of the mathematical symbol: the unused parameter is ignored.
  friend bool operator==(const FunctionTag& a, const FunctionTag& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == FunctionKind::JacobiCn) return a.k_sq == b.k_sq;
    if (a.kind == FunctionKind::BesselJ) return a.p == b.p;
    return true;
  }
};

inline std::string_view kind_name(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Zeta: return "zeta";
    case FunctionKind::Gamma: return "gamma";
    case FunctionKind::JacobiCn: return "cn";
    case FunctionKind::BesselJ: return "besselj";
  }
  return "?";
}

inline FunctionKind parse_kind(std::string_view name) {
  if (name == "zeta") return FunctionKind::Zeta;
  if (name == "gamma") return FunctionKind::Gamma;
  if (name == "cn") return FunctionKind::JacobiCn;
  if (name == "besselj") return FunctionKind::BesselJ;
  throw DomainError("unknown function kind: " + std::string(name));
}

/// F(w) for the tagged function.
inline Complex eval_tagged(const FunctionTag& tag, Complex w) {
  switch (tag.kind) {
    case FunctionKind::Zeta: return eval_zeta(w);
    case FunctionKind::Gamma: return eval_gamma(w);
    case FunctionKind::JacobiCn: return eval_cn(w, tag.k_sq);
    case FunctionKind::BesselJ: return eval_bessel_j(tag.p, w);
  }
  throw DomainError("eval_tagged: bad tag");
}

/// |F(n s)|, the modulus entering every locus and row equation.
inline double eval_abs(const FunctionTag& tag, int n, Complex s) {
  if (n < 1) throw DomainError("eval_abs: multiplier must be positive");
  return std::abs(eval_tagged(tag, static_cast<double>(n) * s));
}

/// Distance from w to the nearest pole of the tagged function (infinity for
/// the entire J_p).
inline double pole_distance(const FunctionTag& tag, Complex w) {
  switch (tag.kind) {
    case FunctionKind::Zeta: return std::abs(w - 1.0);
    case FunctionKind::Gamma: {
      const double nearest = std::min(0.0, std::nearbyint(w.real()));
      return std::abs(w - nearest);
    }
    case FunctionKind::JacobiCn: {
      const double k = elliptic_k(tag.k_sq);
      const double kp = elliptic_k(1.0 - tag.k_sq);
      // poles at (2a) K + (2b + 1) i K'
      const double a = std::nearbyint(w.real() / (2.0 * k));
      const double b = std::nearbyint((w.imag() / kp - 1.0) / 2.0);
      double best = std::numeric_limits<double>::infinity();
      for (double da = -1; da <= 1; ++da) {
        for (double db = -1; db <= 1; ++db) {
          const Complex pole(2.0 * (a + da) * k, (2.0 * (b + db) + 1.0) * kp);
          best = std::min(best, std::abs(w - pole));
        }
      }
      return best;
    }
    case FunctionKind::BesselJ: return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace metafun
