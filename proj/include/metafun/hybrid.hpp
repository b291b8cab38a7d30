#pragma once

// Mean-value points and constants of the complete hybrid formula
//
//     Z~^2(a1[1]) sin^2(a0[1]) + Z~^2(a1[2]) cos^2(a0[2]) = Z~^2(b1).
//
// Construction. Let rev = [t_a, t_b] be the first reverse iterate of
// base = [pi L, pi L + U] and f_1 = sin^2, f_2 = cos^2. The substitution
// u = phi1(t) gives
//
//     I_l := int_rev Z~^2(t) f_l(phi1(t)) dt = int_base f_l(u) du,
//     I_1 + I_2 = int_rev Z~^2 = U.
//
// The first mean value theorem applied twice to I_l yields
//     I_l = Z~^2(a1[l]) * F_l,      F_l := int_rev f_l(phi1(t)) dt,
//     F_l = |rev| * f_l(a0[l]),     a0[l] in base,
// and to the last integral, U = |rev| * Z~^2(b1). Dividing by |rev| gives the
// formula above with c1 = Z~^2(a1[1]), c2 = sin^2 a0[1], c3 = cos^2 a0[2],
// lambda = Z~^2(a1[2]) (the neutral factor) and c4 = Z~^2(b1).
//
// On base, sin^2(pi L + y) = sin^2 y is increasing and cos^2 decreasing in
// y in (0, U), U < pi/2, so a0[l] is unique and available in closed form.
// a1[l] and b1 are the smallest roots in rev, found by a uniform scan followed
// by Brent refinement.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "metafun/error.hpp"
#include "metafun/ladder.hpp"
#include "metafun/numerics/quadrature.hpp"
#include "metafun/numerics/roots.hpp"

namespace metafun {

inline constexpr int kDefaultL0 = 30;

struct HybridOptions {
  int L0 = kDefaultL0;
  /// Root scan resolution inside rev (units of t).
  double scan_step = 2.5e-3;
  /// Constants at or below this value are treated as degenerate.
  double degenerate_floor = 1e-12;
};

struct HybridConstants {
  int L = 0;
  double U = 0.0;
  SegmentInterval base_seg;
  SegmentInterval rev_seg;
  /// Index 0 is l = 1 (sin^2), index 1 is l = 2 (cos^2).
  std::array<double, 2> alpha0{};
  std::array<double, 2> alpha1{};
  double beta1 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double lambda = 0.0;
  double residual = 0.0;

  /// {c1, c2, c3, c4}, the targets of the four level curves.
  std::array<double, 4> targets() const { return {c1, c2, c3, c4}; }
};

/// F_l and I_l over the reverse segment, l = 1, 2.
struct HybridIntegrals {
  SegmentInterval base;
  SegmentInterval rev;
  std::array<double, 2> F{};
  std::array<double, 2> I{};
};

namespace detail {

inline void check_hybrid_args(int L, double U, const HybridOptions& opt) {
  if (L < opt.L0) throw DomainError("hybrid: L must be >= L0 = " + std::to_string(opt.L0));
  if (!(U > 0.0 && U < std::numbers::pi / 2.0)) {
    throw DomainError("hybrid: U must lie in (0, pi/2)");
  }
}

inline double sin_sq(double x) {
  const double s = std::sin(x);
  return s * s;
}

inline double cos_sq(double x) {
  const double c = std::cos(x);
  return c * c;
}

/// Smallest root of g(t) = value in the open interval (a, b).
template <class G>
double smallest_root(G&& g, double value, const SegmentInterval& seg, double step,
                     const char* what) {
  auto h = [&](double t) { return g(t) - value; };
  const int cells = std::max(64, static_cast<int>(std::ceil(seg.length() / step)));
  const auto br = numerics::first_sign_change(h, seg.a, seg.b, cells);
  if (!br) throw NoRootError(std::string(what) + ": no mean-value point found in the reverse segment");
  if (br->a == br->b) return br->a;
  return numerics::brent(h, br->a, br->b, br->fa, br->fb, 0.0).x;
}

}  // namespace detail

inline HybridIntegrals hybrid_integrals(int L, double U, const LadderModel& model,
                                        const HybridOptions& opt = {}) {
  detail::check_hybrid_args(L, U, opt);
  HybridIntegrals out;
  out.base = base_segment(L, U);
  out.rev = model.reverse_iterate(out.base);
  numerics::QuadratureOptions q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-13;
  const auto r = numerics::integrate(
      [&](double t) {
        const double phi = model.phi1(t);
        const double w = model.z_tilde_sq(t);
        const double s2 = detail::sin_sq(phi);
        const double c2 = detail::cos_sq(phi);
        return std::array<double, 4>{s2, c2, w * s2, w * c2};
      },
      out.rev.a, out.rev.b, q);
  out.F = {r.value[0], r.value[1]};
  out.I = {r.value[2], r.value[3]};
  return out;
}

namespace detail {

inline double alpha0_from(int l, const HybridIntegrals& hi) {
  const double mean = hi.F[static_cast<std::size_t>(l - 1)] / hi.rev.length();
  const double root = std::sqrt(std::clamp(mean, 0.0, 1.0));
  const double y = (l == 1) ? std::asin(root) : std::acos(root);
  return hi.base.a + y;
}

inline double alpha1_from(int l, const HybridIntegrals& hi, const LadderModel& model,
                          const HybridOptions& opt) {
  const std::size_t i = static_cast<std::size_t>(l - 1);
  const double value = hi.I[i] / hi.F[i];
  return smallest_root([&](double t) { return model.z_tilde_sq(t); }, value, hi.rev,
                       opt.scan_step, "alpha1");
}

inline double beta1_from(int L, double U, const HybridIntegrals& hi, const LadderModel& model,
                         const HybridOptions& opt) {
  (void)L;
  return smallest_root([&](double t) { return model.z_tilde_sq(t); }, U / hi.rev.length(),
                       hi.rev, opt.scan_step, "beta1");
}

inline void check_l(int l) {
  if (l != 1 && l != 2) throw DomainError("hybrid: l must be 1 or 2");
}

}  // namespace detail

/// a0[l] in (pi L, pi L + U) with f_l(a0) equal to the mean of f_l(phi1) over rev.
inline double solve_alpha0(int l, int L, double U, const LadderModel& model,
                           const HybridOptions& opt = {}) {
  detail::check_l(l);
  return detail::alpha0_from(l, hybrid_integrals(L, U, model, opt));
}

/// Smallest a1[l] in rev with Z~^2(a1) = I_l / F_l.
inline double solve_alpha1(int l, int L, double U, const LadderModel& model,
                           const HybridOptions& opt = {}) {
  detail::check_l(l);
  return detail::alpha1_from(l, hybrid_integrals(L, U, model, opt), model, opt);
}

/// Smallest b1 in rev with Z~^2(b1) = U / |rev|.
inline double solve_beta1(int L, double U, const LadderModel& model, const HybridOptions& opt = {}) {
  return detail::beta1_from(L, U, hybrid_integrals(L, U, model, opt), model, opt);
}

/// Recomputes c1 c2 + lambda c3 - c4 from the stored points; returns its modulus.
inline double verify_mother(const HybridConstants& h, const LadderModel& model) {
  const double c1 = model.z_tilde_sq(h.alpha1[0]);
  const double c2 = detail::sin_sq(h.alpha0[0]);
  const double c3 = detail::cos_sq(h.alpha0[1]);
  const double lambda = model.z_tilde_sq(h.alpha1[1]);
  const double c4 = model.z_tilde_sq(h.beta1);
  return std::abs(c1 * c2 + lambda * c3 - c4);
}

inline HybridConstants compute_hybrid_constants(int L, double U, const LadderModel& model,
                                                const HybridOptions& opt = {}) {
  const HybridIntegrals hi = hybrid_integrals(L, U, model, opt);
  HybridConstants h;
  h.L = L;
  h.U = U;
  h.base_seg = hi.base;
  h.rev_seg = hi.rev;
  h.alpha0 = {detail::alpha0_from(1, hi), detail::alpha0_from(2, hi)};
  h.alpha1 = {detail::alpha1_from(1, hi, model, opt), detail::alpha1_from(2, hi, model, opt)};
  h.beta1 = detail::beta1_from(L, U, hi, model, opt);
  h.c1 = model.z_tilde_sq(h.alpha1[0]);
  h.c2 = detail::sin_sq(h.alpha0[0]);
  h.c3 = detail::cos_sq(h.alpha0[1]);
  h.lambda = model.z_tilde_sq(h.alpha1[1]);
  h.c4 = model.z_tilde_sq(h.beta1);
  const std::array<double, 5> all = {h.c1, h.c2, h.c3, h.c4, h.lambda};
  for (double c : all) {
    if (!std::isfinite(c) || !(c > opt.degenerate_floor)) {
      throw DegenerateConstantsError(
          "hybrid: a constant vanished (mean-value point on a zero of Z~^2 or of sin/cos); "
          "retry with a slightly perturbed U");
    }
  }
  h.residual = std::abs(h.c1 * h.c2 + h.lambda * h.c3 - h.c4);
  return h;
}

}  // namespace metafun
