#pragma once

// A computable Jacob's ladder.
//
// The ladder is modelled as the solution of
//     d phi1 / dt = Z~^2(t) = |zeta(1/2 + it)|^2 / omega(t),
//     phi1(t0)   = t0 - (1 - gamma_E) t0 / ln t0,
// tabulated at checkpoints spaced pi/4 apart so that any phi1(t) costs one
// short Gauss-Kronrod integral from the nearest checkpoint. Every identity
// used downstream only needs phi1' = Z~^2 to hold exactly, which the model
// does by construction; only the growth of t - phi1(t) depends on omega.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "metafun/error.hpp"
#include "metafun/numerics/quadrature.hpp"
#include "metafun/numerics/roots.hpp"
#include "metafun/specfun/zeta.hpp"

namespace metafun {

inline constexpr double kEulerGamma = std::numbers::egamma;

enum class OmegaVariant {
  /// omega(t) = ln t.
  LeadingLog,
  /// omega(t) = (ln(t/2pi) + 2 gamma_E) / (1 - (1 - gamma_E)/ln t): the mean of
  /// Z~^2 is then 1 - (1 - gamma_E)/ln t, so t - phi1(t) grows like
  /// (1 - gamma_E) t / ln t.
  Calibrated,
  /// omega(t) = ln(t/2pi) + 2 gamma_E: the mean square of zeta alone, which
  /// makes the mean of Z~^2 exactly 1 and freezes t - phi1(t) at its anchor value.
  MeanSquare,
};

struct SegmentInterval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b - a; }
  bool contains_open(double x) const { return x > a && x < b; }
};

/// The base segment [pi L, pi L + U].
inline SegmentInterval base_segment(int L, double U) {
  const double left = std::numbers::pi * static_cast<double>(L);
  return {left, left + U};
}

struct LadderOptions {
  OmegaVariant omega = OmegaVariant::Calibrated;
  double anchor_t0 = 10.0;
  /// Checkpoints are tabulated on [anchor_t0, t_max]; beyond it phi1 still
  /// works but integrates from the last checkpoint on every call.
  double t_max = 2000.0;
  double quad_tol = 1e-10;
  double checkpoint_spacing = std::numbers::pi / 4.0;
};

struct Checkpoint {
  double t = 0.0;
  double phi = 0.0;
};

class LadderModel {
 public:
  explicit LadderModel(const LadderOptions& opt = {}) : opt_(opt) {
    if (!(opt_.anchor_t0 >= 10.0)) throw DomainError("ladder: anchor_t0 must be >= 10");
    if (!(opt_.t_max > opt_.anchor_t0)) throw DomainError("ladder: t_max must exceed anchor_t0");
    if (!(opt_.quad_tol > 0.0) || !(opt_.checkpoint_spacing > 0.0)) {
      throw DomainError("ladder: tolerances and spacing must be positive");
    }
    const double t0 = opt_.anchor_t0;
    const std::size_t count =
        static_cast<std::size_t>(std::ceil((opt_.t_max - t0) / opt_.checkpoint_spacing)) + 1;
    table_.reserve(count);
    table_.push_back({t0, anchor_value()});
    for (std::size_t i = 1; i < count; ++i) {
      const double t = t0 + static_cast<double>(i) * opt_.checkpoint_spacing;
      const Checkpoint& prev = table_.back();
      table_.push_back({t, prev.phi + integrate_z_tilde_sq(prev.t, t)});
    }
  }

  /// Builds a model whose table covers the reverse iterate of [pi L, pi L + U]
  /// for every L up to `max_L` (with a generous margin).
  static LadderOptions options_for(int max_L, OmegaVariant omega = OmegaVariant::Calibrated) {
    LadderOptions opt;
    opt.omega = omega;
    const double T = std::numbers::pi * static_cast<double>(max_L) + 2.0;
    opt.t_max = std::max(opt.anchor_t0 + 10.0, T + 1.2 * T / std::log(T) + 20.0);
    return opt;
  }

  const LadderOptions& options() const { return opt_; }
  const std::vector<Checkpoint>& checkpoints() const { return table_; }
  double anchor_t0() const { return opt_.anchor_t0; }

  /// phi1(t0) = t0 - (1 - gamma_E) t0 / ln t0.
  double anchor_value() const {
    const double t0 = opt_.anchor_t0;
    return t0 - (1.0 - kEulerGamma) * t0 / std::log(t0);
  }

  double omega(double t) const {
    check_domain(t);
    const double lt = std::log(t);
    switch (opt_.omega) {
      case OmegaVariant::LeadingLog: return lt;
      case OmegaVariant::Calibrated:
        return (std::log(t / (2.0 * std::numbers::pi)) + 2.0 * kEulerGamma) /
               (1.0 - (1.0 - kEulerGamma) / lt);
      case OmegaVariant::MeanSquare:
        return std::log(t / (2.0 * std::numbers::pi)) + 2.0 * kEulerGamma;
    }
    return lt;
  }

  /// Z~^2(t) = d phi1 / dt.
  double z_tilde_sq(double t) const { return eval_zeta_critical_sq(t) / omega(t); }

  double phi1(double t) const {
    check_domain(t);
    const std::size_t i = checkpoint_below(t);
    return phi_from(i, t);
  }

  /// The unique T' >= t0 with phi1(T') = T.
  double phi1_inverse(double T) const {
    if (!(T >= table_.front().phi)) throw DomainError("phi1_inverse: T below phi1(anchor)");
    std::size_t i;
    if (T <= table_.back().phi) {
      const auto it = std::upper_bound(table_.begin(), table_.end(), T,
                                       [](double v, const Checkpoint& c) { return v < c.phi; });
      i = static_cast<std::size_t>(std::distance(table_.begin(), it)) - 1;
      if (i + 1 >= table_.size()) i = table_.size() - 2;
    } else {
      return inverse_beyond_table(T);
    }
    const double lo = table_[i].t;
    const double hi = table_[i + 1].t;
    auto f = [&](double t) { return phi_from(i, t) - T; };
    const double flo = table_[i].phi - T;
    const double fhi = table_[i + 1].phi - T;
    return numerics::brent(f, lo, hi, flo, fhi, 0.0).x;
  }

  SegmentInterval reverse_iterate(const SegmentInterval& seg) const {
    if (!(seg.a < seg.b)) throw DomainError("reverse_iterate: empty segment");
    return {phi1_inverse(seg.a), phi1_inverse(seg.b)};
  }

  /// Gap between [pi L, pi L + U] and its first reverse iterate.
  double rho_distance(int L, double U) const {
    const SegmentInterval base = base_segment(L, U);
    return reverse_iterate(base).a - base.b;
  }

  /// Integral of Z~^2 over [a, b].
  double integrate_z_tilde_sq(double a, double b) const {
    numerics::QuadratureOptions q;
    q.abs_tol = 1e-3 * opt_.quad_tol;
    q.rel_tol = 1e-13;
    return numerics::integrate([this](double t) { return z_tilde_sq(t); }, a, b, q).value;
  }

  /// Integral over `rev` of g(phi1(t)) Z~^2(t) dt; equals the integral of g
  /// over the forward image of `rev`.
  template <class G>
  double integrate_pullback(G&& g, const SegmentInterval& rev) const {
    numerics::QuadratureOptions q;
    q.abs_tol = 1e-3 * opt_.quad_tol;
    q.rel_tol = 1e-12;
    return numerics::integrate([&](double t) { return g(phi1(t)) * z_tilde_sq(t); }, rev.a,
                               rev.b, q)
        .value;
  }

 private:
  void check_domain(double t) const {
    if (!(t >= opt_.anchor_t0)) throw DomainError("ladder: t below anchor_t0");
  }

  std::size_t checkpoint_below(double t) const {
    const double pos = (t - opt_.anchor_t0) / opt_.checkpoint_spacing;
    std::size_t i = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
    return std::min(i, table_.size() - 1);
  }

  double phi_from(std::size_t i, double t) const {
    const Checkpoint& c = table_[i];
    if (t == c.t) return c.phi;
    if (t <= c.t + 1.5 * opt_.checkpoint_spacing) return c.phi + integrate_z_tilde_sq(c.t, t);
    // Past the table: march in checkpoint-sized panels.
    double phi = c.phi;
    double from = c.t;
    while (t - from > opt_.checkpoint_spacing) {
      const double to = from + opt_.checkpoint_spacing;
      phi += integrate_z_tilde_sq(from, to);
      from = to;
    }
    return phi + integrate_z_tilde_sq(from, t);
  }

  double inverse_beyond_table(double T) const {
    double from = table_.back().t;
    double phi = table_.back().phi;
    for (;;) {
      const double to = from + opt_.checkpoint_spacing;
      const double next = phi + integrate_z_tilde_sq(from, to);
      if (next >= T) {
        auto f = [&](double t) { return phi + integrate_z_tilde_sq(from, t) - T; };
        return numerics::brent(f, from, to, phi - T, next - T, 0.0).x;
      }
      from = to;
      phi = next;
    }
  }

  LadderOptions opt_;
  std::vector<Checkpoint> table_;
};

}  // namespace metafun
