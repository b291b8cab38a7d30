#pragma once

// Points on the level curves |F(n s)| = c of the four tagged functions.
//
// LineScan walks horizontal lines of a rectangle (bottom to top, each left to
// right) on a grid of spacing step / n, watches |F(n s)| - c for a sign change
// between neighbouring grid points and polishes the first one with Brent's
// method. The scan order is fixed, so a request always returns the same point.
//
// Continuation starts at the centre of the region and runs Newton's method
// on log|F(n s)| - log c along the gradient of log|F|, which is obtained by
// central differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "metafun/error.hpp"
#include "metafun/hybrid.hpp"
#include "metafun/numerics/roots.hpp"
#include "metafun/scheme.hpp"
#include "metafun/specfun/function_tag.hpp"

namespace metafun {

/// Relative tolerance every returned locus point satisfies.
inline constexpr double kLocusRelTol = 1e-10;
/// Points with n s closer than this to a pole are never returned.
inline constexpr double kPoleGuard = 1e-8;
/// Central-difference step for gradients of log|F|, in units of s.
inline constexpr double kGradientStep = 1e-6;

/// Closed rectangle [re_min, re_max] x [im_min, im_max]; may be degenerate
/// (a segment or a point).
struct Rect {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  bool contains(Complex s) const {
    return s.real() >= re_min && s.real() <= re_max && s.imag() >= im_min && s.imag() <= im_max;
  }
  Complex centre() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  Rect scaled(double f) const { return {re_min * f, re_max * f, im_min * f, im_max * f}; }
};

enum class LocusStrategy { LineScan, Continuation };

struct LocusRequest {
  FunctionTag tag;
  int n = 1;
  double target_c = 1.0;
  /// Search rectangle in the s plane; the default chain for the tag when empty.
  std::optional<Rect> region;
  LocusStrategy strategy = LocusStrategy::LineScan;
  /// Grid spacing in the w = n s plane.
  double step = 0.05;
};

struct LocusPoint {
  FunctionTag tag;
  int n = 1;
  double target_c = 0.0;
  Complex s;
  double achieved = 0.0;
  /// Where the scan found the point, e.g. "linescan:r0:l3:c17".
  std::string search_id;
};

/// Re-evaluates |F(n s)| and checks it against the target.
inline bool validates(const LocusPoint& p, double rel_tol = kLocusRelTol) {
  double v;
  try {
    v = eval_abs(p.tag, p.n, p.s);
  } catch (const Error&) {
    return false;
  }
  return std::isfinite(v) && v > 0.0 && std::abs(v - p.target_c) <= rel_tol * p.target_c;
}

/// Search rectangles tried in order when a request carries none. They are
/// fixed in the w = n s plane and divided by n.
inline std::vector<Rect> default_regions(const FunctionTag& tag, int n) {
  if (n < 1) throw DomainError("default_regions: multiplier must be positive");
  std::vector<Rect> w;
  switch (tag.kind) {
    case FunctionKind::Zeta:
      w = {{1.5, 6.0, 0.0, 4.0}, {-1.999, 0.95, 0.0, 0.0}, {1.001, 1.5, 0.0, 0.0}};
      break;
    case FunctionKind::Gamma:
      w = {{0.2, 6.0, 0.0, 4.0}, {0.2, 6.0, 0.0, 12.0}, {6.0, 30.0, 0.0, 0.0}, {1e-4, 0.2, 0.0, 0.0}};
      break;
    case FunctionKind::JacobiCn: {
      const double k = elliptic_k(tag.k_sq);
      const double kp = elliptic_k(1.0 - tag.k_sq);
      w = {{0.0, k, 0.0, 0.95 * kp}, {0.0, k, 0.0, 0.9999 * kp}};
      break;
    }
    case FunctionKind::BesselJ:
      w = {{0.1, 10.0, 0.0, 2.0}, {0.1, 10.0, 0.0, 10.0}, {0.1, 10.0, 0.0, 40.0}};
      break;
  }
  for (auto& r : w) r = r.scaled(1.0 / static_cast<double>(n));
  return w;
}

/// True when the closed rectangle (s plane) contains a pole of F(n s).
inline bool region_contains_pole(const FunctionTag& tag, int n, const Rect& r) {
  const Rect w = r.scaled(static_cast<double>(n));
  switch (tag.kind) {
    case FunctionKind::Zeta: return w.contains({1.0, 0.0});
    case FunctionKind::Gamma: {
      if (w.im_min > 0.0 || w.im_max < 0.0) return false;
      if (w.re_max < 0.0) return std::floor(w.re_max) >= w.re_min;
      return w.re_min <= 0.0;
    }
    case FunctionKind::JacobiCn: {
      const double k = elliptic_k(tag.k_sq);
      const double kp = elliptic_k(1.0 - tag.k_sq);
      // poles at 2aK + (2b+1) i K'
      const double a_lo = std::ceil(w.re_min / (2.0 * k));
      const double a_hi = std::floor(w.re_max / (2.0 * k));
      const double b_lo = std::ceil((w.im_min / kp - 1.0) / 2.0);
      const double b_hi = std::floor((w.im_max / kp - 1.0) / 2.0);
      return a_lo <= a_hi && b_lo <= b_hi;
    }
    case FunctionKind::BesselJ: return false;
  }
  return false;
}

namespace detail {

/// |F(n s)|, or NaN when n s is within the guard radius of a pole or the
/// evaluator refuses the point.
inline double modulus_or_nan(const FunctionTag& tag, int n, Complex s) {
  const Complex w = static_cast<double>(n) * s;
  if (pole_distance(tag, w) < kPoleGuard) return std::numeric_limits<double>::quiet_NaN();
  try {
    return std::abs(eval_tagged(tag, w));
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

inline bool acceptable(double achieved, double c) {
  return std::isfinite(achieved) && achieved > 0.0 && std::abs(achieved - c) <= kLocusRelTol * c;
}

inline std::string rect_text(const Rect& r) {
  std::ostringstream os;
  os.precision(6);
  os << "[" << r.re_min << ", " << r.re_max << "] x [" << r.im_min << ", " << r.im_max << "]";
  return os.str();
}

inline std::optional<LocusPoint> scan_region(const LocusRequest& req, const Rect& r, int region_id) {
  const double c = req.target_c;
  const double spacing = req.step / static_cast<double>(req.n);
  const int nx = std::max(0, static_cast<int>(std::ceil((r.re_max - r.re_min) / spacing - 1e-9)));
  const int ny = std::max(0, static_cast<int>(std::ceil((r.im_max - r.im_min) / spacing - 1e-9)));
  auto grid_x = [&](int i) {
    return nx == 0 ? r.re_min : r.re_min + (r.re_max - r.re_min) * static_cast<double>(i) / nx;
  };
  for (int j = 0; j <= ny; ++j) {
    const double y =
        ny == 0 ? r.im_min : r.im_min + (r.im_max - r.im_min) * static_cast<double>(j) / ny;
    auto g = [&](double x) { return modulus_or_nan(req.tag, req.n, {x, y}) - c; };
    auto make = [&](double x, int cell) {
      LocusPoint p{req.tag, req.n, c, {x, y}, 0.0, ""};
      p.achieved = eval_abs(req.tag, req.n, p.s);
      p.search_id = "linescan:r" + std::to_string(region_id) + ":l" + std::to_string(j) + ":c" +
                    std::to_string(cell);
      return p;
    };
    double x0 = grid_x(0);
    double g0 = g(x0);
    if (g0 == 0.0) {
      LocusPoint p = make(x0, 0);
      if (acceptable(p.achieved, c)) return p;
    }
    for (int i = 1; i <= nx; ++i) {
      const double x1 = grid_x(i);
      const double g1 = g(x1);
      if (std::isfinite(g0) && std::isfinite(g1)) {
        if (g1 == 0.0) {
          LocusPoint p = make(x1, i);
          if (acceptable(p.achieved, c)) return p;
        } else if ((g0 < 0.0) != (g1 < 0.0) && g0 != 0.0) {
          try {
            const auto root = numerics::brent(g, x0, x1, g0, g1, 0.0);
            if (std::isfinite(root.fx)) {
              LocusPoint p = make(root.x, i);
              if (acceptable(p.achieved, c)) return p;
            }
          } catch (const Error&) {
            // bracket lost to a NaN inside the cell; keep scanning
          }
        }
      }
      x0 = x1;
      g0 = g1;
    }
  }
  return std::nullopt;
}

/// Gradient of log|F(n s)| with respect to (Re s, Im s).
inline std::optional<Complex> log_modulus_gradient(const FunctionTag& tag, int n, Complex s) {
  const double h = kGradientStep;
  const double xp = modulus_or_nan(tag, n, s + Complex(h, 0.0));
  const double xm = modulus_or_nan(tag, n, s - Complex(h, 0.0));
  const double yp = modulus_or_nan(tag, n, s + Complex(0.0, h));
  const double ym = modulus_or_nan(tag, n, s - Complex(0.0, h));
  if (!(xp > 0.0 && xm > 0.0 && yp > 0.0 && ym > 0.0)) return std::nullopt;
  const Complex grad((std::log(xp) - std::log(xm)) / (2.0 * h),
                     (std::log(yp) - std::log(ym)) / (2.0 * h));
  if (!std::isfinite(grad.real()) || !std::isfinite(grad.imag()) || std::abs(grad) == 0.0) {
    return std::nullopt;
  }
  return grad;
}

/// Solves |F(n (s0 + tau d))| = c for the smallest |tau| <= max_radius on
/// the side where the modulus moves toward c; d is a unit direction along
/// which |F| increases.
inline std::optional<Complex> refine_along(const FunctionTag& tag, int n, double c, Complex s0,
                                           Complex d, double max_radius) {
  auto f = [&](double tau) { return modulus_or_nan(tag, n, s0 + tau * d) - c; };
  const double f0 = f(0.0);
  if (!std::isfinite(f0)) return std::nullopt;
  if (f0 == 0.0) return s0;
  const double sign = f0 < 0.0 ? 1.0 : -1.0;
  double r = std::min(max_radius, 1e-9 * std::max(1.0, std::abs(s0)));
  double prev = 0.0;
  double fprev = f0;
  for (;;) {
    const double fr = f(sign * r);
    if (!std::isfinite(fr)) return std::nullopt;
    if ((fr < 0.0) != (f0 < 0.0) || fr == 0.0) {
      const auto root = numerics::brent(f, sign * prev, sign * r, fprev, fr, 0.0);
      return s0 + root.x * d;
    }
    if (r >= max_radius) return std::nullopt;
    prev = r;
    fprev = fr;
    r = std::min(max_radius, 2.0 * r);
  }
}

inline LocusPoint continuation_search(const LocusRequest& req, const Rect& r) {
  const double c = req.target_c;
  const double log_c = std::log(c);
  const double size = std::max({r.re_max - r.re_min, r.im_max - r.im_min, 1e-6});
  Complex s = r.centre();
  for (int it = 0; it < 100; ++it) {
    const double v = modulus_or_nan(req.tag, req.n, s);
    if (!(v > 0.0)) break;
    const double h = std::log(v) - log_c;
    const auto grad = log_modulus_gradient(req.tag, req.n, s);
    if (!grad) break;
    const double gn = std::abs(*grad);
    if (std::abs(h) < 1e-6) {
      const auto hit = refine_along(req.tag, req.n, c, s, *grad / gn, 0.1 * size);
      if (hit && r.contains(*hit)) {
        LocusPoint p{req.tag, req.n, c, *hit, eval_abs(req.tag, req.n, *hit),
                     "continuation:it" + std::to_string(it)};
        if (acceptable(p.achieved, c)) return p;
      }
    }
    Complex step = (-h / (gn * gn)) * *grad;
    const double len = std::abs(step);
    if (len > 0.25 * size) step *= 0.25 * size / len;
    s += step;
    if (!r.contains(s)) break;
  }
  throw LocusNotFoundError("continuation: Newton path left " + rect_text(r) + " without reaching |F| = c");
}

}  // namespace detail

inline LocusPoint find_locus_point(const LocusRequest& req) {
  if (req.n < 1) throw DomainError("find_locus_point: multiplier must be positive");
  if (!(req.target_c > 0.0) || !std::isfinite(req.target_c)) {
    throw DomainError("find_locus_point: target must lie in (0, inf)");
  }
  if (!(req.step > 0.0)) throw DomainError("find_locus_point: step must be positive");
  std::vector<Rect> regions;
  if (req.region) {
    const Rect& r = *req.region;
    if (!(r.re_min <= r.re_max && r.im_min <= r.im_max)) {
      throw DomainError("find_locus_point: malformed region");
    }
    if (region_contains_pole(req.tag, req.n, r)) {
      throw PoleError("find_locus_point: region " + detail::rect_text(r) + " contains a pole of " +
                      std::string(kind_name(req.tag.kind)) + "(" + std::to_string(req.n) + " s)");
    }
    regions.push_back(r);
  } else {
    regions = default_regions(req.tag, req.n);
  }
  if (req.strategy == LocusStrategy::Continuation) {
    return detail::continuation_search(req, regions.front());
  }
  std::string scanned;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (auto p = detail::scan_region(req, regions[i], static_cast<int>(i))) return *p;
    scanned += (i ? "; " : "") + detail::rect_text(regions[i]);
  }
  std::ostringstream os;
  os.precision(12);
  os << "no point with |" << kind_name(req.tag.kind) << "(" << req.n << " s)| = " << req.target_c
     << " in " << scanned;
  throw LocusNotFoundError(os.str());
}

struct LocusTrace {
  std::vector<LocusPoint> points;
  /// First step index at which the curve came back within step_len of the start.
  std::optional<int> closed_at;
  bool stopped_early = false;
  std::string stop_reason;
};

/// Predictor-corrector continuation along |F(n s)| = c from `start`:
/// tangent predictor, corrector along the gradient of log|F|.
inline LocusTrace trace_locus(const LocusPoint& start, int steps, double step_len) {
  if (steps < 0) throw DomainError("trace_locus: steps must be non-negative");
  if (!(step_len > 0.0 && step_len <= 0.1)) throw DomainError("trace_locus: step_len must lie in (0, 0.1]");
  if (!validates(start)) throw DomainError("trace_locus: start is not on its level curve");
  LocusTrace out;
  out.points.push_back(start);
  const FunctionTag& tag = start.tag;
  const int n = start.n;
  const double c = start.target_c;
  Complex s = start.s;
  std::optional<Complex> prev_tangent;
  double farthest = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const auto grad = detail::log_modulus_gradient(tag, n, s);
    if (!grad || 1.0 / std::abs(*grad) < 1e-6) {
      out.stopped_early = true;
      out.stop_reason = "zero or pole proximity";
      break;
    }
    Complex tangent = Complex(0.0, 1.0) * (*grad / std::abs(*grad));
    if (prev_tangent && (std::conj(*prev_tangent) * tangent).real() < 0.0) tangent = -tangent;
    double h = step_len;
    std::optional<Complex> next;
    for (int halving = 0; halving <= 5 && !next; ++halving, h *= 0.5) {
      const Complex predicted = s + h * tangent;
      const auto g2 = detail::log_modulus_gradient(tag, n, predicted);
      if (!g2) continue;
      const auto hit = detail::refine_along(tag, n, c, predicted, *g2 / std::abs(*g2), h);
      if (hit && std::abs(*hit - s) <= 2.0 * step_len) {
        const double v = detail::modulus_or_nan(tag, n, *hit);
        if (detail::acceptable(v, c)) next = hit;
      }
    }
    if (!next) throw StepFailureError("trace_locus: corrector failed after 5 step halvings");
    prev_tangent = tangent;
    s = *next;
    LocusPoint p{tag, n, c, s, eval_abs(tag, n, s), "trace:" + std::to_string(i)};
    out.points.push_back(p);
    const double dist = std::abs(s - start.s);
    farthest = std::max(farthest, dist);
    if (!out.closed_at && farthest > 2.0 * step_len && dist < step_len) out.closed_at = i;
  }
  return out;
}

/// The four points of one row: slot l lies on |F_l(row s)| = c_l, with F_l
/// given by the scheme.
inline std::array<LocusPoint, 4> build_locus_family(const HybridConstants& h, Scheme scheme, int row,
                                                    const FamilyParams& params = {}) {
  if (row < 1) throw DomainError("build_locus_family: row must be positive");
  const KindTuple kinds = kinds_for_row(scheme, row);
  const auto targets = h.targets();
  std::array<LocusPoint, 4> out;
  for (std::size_t l = 0; l < 4; ++l) {
    LocusRequest req;
    req.tag = make_tag(kinds[l], params);
    req.n = row;
    req.target_c = targets[l];
    try {
      out[l] = find_locus_point(req);
    } catch (const LocusNotFoundError& e) {
      throw LocusNotFoundError("row " + std::to_string(row) + ", slot " + std::to_string(l + 1) +
                               " (" + std::string(kind_name(kinds[l])) + "): " + e.what());
    }
  }
  return out;
}

}  // namespace metafun
