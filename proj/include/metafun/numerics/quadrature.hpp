#pragma once

// Globally adaptive Gauss-Kronrod (7-15 / 15-31) integration for scalar and
// fixed-size vector integrands. Interval error estimates follow QUADPACK's
// dqk31 heuristic; the interval with the largest scaled error is bisected
// until the global estimate meets the tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "metafun/error.hpp"

namespace metafun::numerics {

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

template <class V>
struct QuadratureResult {
  V value{};
  V error{};
  int intervals = 0;
  int evaluations = 0;
};

namespace detail {

// Nodes and weights of the 31-point Kronrod extension of 15-point Gauss.
inline constexpr std::array<double, 16> kXgk31 = {
    0.998002298693397060285172840152271, 0.987992518020485428489565718586613,
    0.967739075679139134257347978784337, 0.937273392400705904307758947710209,
    0.897264532344081900882509656454496, 0.848206583410427216200648320774217,
    0.790418501442465932967649294817947, 0.724417731360170047416186054613938,
    0.650996741297416970533735895313275, 0.570972172608538847537226737253911,
    0.485081863640239680693655740232351, 0.394151347077563369897207370981045,
    0.299180007153168812166780024266389, 0.201194093997434522300628303394596,
    0.101142066918717499027074231447392, 0.0};
inline constexpr std::array<double, 16> kWgk31 = {
    0.005377479872923348987792051430128, 0.015007947329316122538374763075807,
    0.025460847326715320186874001019653, 0.035346360791375846222037948478360,
    0.044589751324764876608227299373280, 0.053481524690928087265343147239430,
    0.062009567800670640285139230960803, 0.069854121318728258709520077099147,
    0.076849680757720378894432777482659, 0.083080502823133021038289247286104,
    0.088564443056211770647275443693774, 0.093126598170825321225486872747346,
    0.096642726983623678505179907627589, 0.099173598721791959332393173484603,
    0.100769845523875595044946662617570, 0.101330007014791549017374792767493};
inline constexpr std::array<double, 8> kWg15 = {
    0.030753241996117268354628393577204, 0.070366047488108124709267416450667,
    0.107159220467171935011869546685869, 0.139570677926154314447804794511028,
    0.166269205816993933553200860481209, 0.186161000015562211026800561866423,
    0.198431485327111576456118326443839, 0.202578241925561272880620199967519};

template <class V>
struct ValueOps;

template <>
struct ValueOps<double> {
  static constexpr std::size_t size = 1;
  static double& at(double& v, std::size_t) { return v; }
  static const double& at(const double& v, std::size_t) { return v; }
};

template <std::size_t N>
struct ValueOps<std::array<double, N>> {
  static constexpr std::size_t size = N;
  static double& at(std::array<double, N>& v, std::size_t i) { return v[i]; }
  static const double& at(const std::array<double, N>& v, std::size_t i) { return v[i]; }
};

template <class V>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  V value{};
  V error{};
  double badness = 0.0;
};

template <class V, class F>
Panel<V> kronrod31(F& f, double a, double b) {
  using Ops = ValueOps<V>;
  constexpr std::size_t n = Ops::size;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double eps = std::numeric_limits<double>::epsilon();

  std::array<V, 15> lo{};
  std::array<V, 15> hi{};
  const V fc = f(centre);
  for (std::size_t j = 0; j < 15; ++j) {
    const double dx = half * kXgk31[j];
    lo[j] = f(centre - dx);
    hi[j] = f(centre + dx);
  }

  Panel<V> p;
  p.a = a;
  p.b = b;
  for (std::size_t c = 0; c < n; ++c) {
    const double fcc = Ops::at(fc, c);
    double resk = kWgk31[15] * fcc;
    double resg = kWg15[7] * fcc;
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 15; ++j) {
      const double f1 = Ops::at(lo[j], c);
      const double f2 = Ops::at(hi[j], c);
      resk += kWgk31[j] * (f1 + f2);
      resabs += kWgk31[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += kWg15[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk31[15] * std::abs(fcc - reskh);
    for (std::size_t j = 0; j < 15; ++j) {
      resasc += kWgk31[j] * (std::abs(Ops::at(lo[j], c) - reskh) +
                             std::abs(Ops::at(hi[j], c) - reskh));
    }
    const double ah = std::abs(half);
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
      err = std::max(50.0 * eps * resabs, err);
    }
    Ops::at(p.value, c) = resk * half;
    Ops::at(p.error, c) = err;
  }
  return p;
}

}  // namespace detail

/// Integrates f over [a, b]. The integrand may return double or
/// std::array<double, N>; for arrays every component must meet the tolerance.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using V = std::decay_t<std::invoke_result_t<F&, double>>;
  using Ops = detail::ValueOps<V>;
  using Panel = detail::Panel<V>;
  constexpr std::size_t n = Ops::size;

  QuadratureResult<V> out;
  if (a == b) return out;

  auto score = [&](Panel& p, const V& total) {
    double worst = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(Ops::at(total, c)));
      worst = std::max(worst, Ops::at(p.error, c) / tol);
    }
    p.badness = worst;
  };
  auto cmp = [](const Panel& x, const Panel& y) {
    if (x.badness != y.badness) return x.badness < y.badness;
    return x.a > y.a;
  };

  std::vector<Panel> heap;
  heap.push_back(detail::kronrod31<V>(f, a, b));
  out.evaluations = 31;

  V total = heap.front().value;
  V total_err = heap.front().error;
  for (;;) {
    bool ok = true;
    for (std::size_t c = 0; c < n; ++c) {
      const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(Ops::at(total, c)));
      if (Ops::at(total_err, c) > tol) ok = false;
    }
    if (ok) break;
    if (static_cast<int>(heap.size()) >= opt.max_intervals) {
      throw QuadratureError("adaptive quadrature: tolerance unreachable within interval budget");
    }
    for (auto& p : heap) score(p, total);
    std::make_heap(heap.begin(), heap.end(), cmp);
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      throw QuadratureError("adaptive quadrature: interval underflow");
    }
    heap.push_back(detail::kronrod31<V>(f, worst.a, mid));
    heap.push_back(detail::kronrod31<V>(f, mid, worst.b));
    out.evaluations += 62;

    // Re-sum from scratch in position order so the result does not depend on
    // the refinement history.
    std::vector<const Panel*> ordered;
    ordered.reserve(heap.size());
    for (const auto& p : heap) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const Panel* x, const Panel* y) { return x->a < y->a; });
    total = V{};
    total_err = V{};
    for (const Panel* p : ordered) {
      for (std::size_t c = 0; c < n; ++c) {
        Ops::at(total, c) += Ops::at(p->value, c);
        Ops::at(total_err, c) += Ops::at(p->error, c);
      }
    }
  }
  out.value = total;
  out.error = total_err;
  out.intervals = static_cast<int>(heap.size());
  return out;
}

}  // namespace metafun::numerics
