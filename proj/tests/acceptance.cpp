// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "metafun/metafun.hpp"
#include "oracle/oracle_values.hpp"

using namespace metafun;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome oracle_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  int cases = 0, bad = 0;
  double worst = 0.0, worst_rs = 0.0;
  auto check = [&](double err, double tol, double* track) {
    ++cases;
    *track = std::max(*track, err);
    if (!(err <= tol)) ++bad;
  };
  using specfun::detail::relative_error;
  for (const auto& c : oracle::kZeta) check(relative_error(eval_zeta(c.arg), c.value), 1e-10, &worst);
  for (const auto& c : oracle::kZetaCriticalSq) {
    const double err = std::abs(eval_zeta_critical_sq(c.arg) - c.value) / c.value;
    if (c.arg >= specfun::kRiemannSiegelFrom) check(err, 1e-9, &worst_rs);
    else check(err, 1e-10, &worst);
  }
  for (const auto& c : oracle::kGamma) check(relative_error(eval_gamma(c.arg), c.value), 1e-10, &worst);
  for (const auto& c : oracle::kBessel) check(relative_error(eval_bessel_j(c.p, c.arg), c.value), 1e-10, &worst);
  for (const auto& c : oracle::kJacobi) {
    const auto t = eval_jacobi(c.arg, c.m);
    check(std::max(relative_error(t.cn, c.cn), relative_error(t.sn, c.sn)), 1e-10, &worst);
  }
  for (const auto& c : oracle::kEllipticK) check(std::abs(elliptic_k(c.m) - c.k) / c.k, 1e-10, &worst);
  const double secs = seconds_since(t0);
  return {bad == 0 && cases >= 200 && secs < 10.0,
          std::to_string(cases) + " values, " + std::to_string(bad) + " out of tolerance, max rel err " +
              num(worst) + " (Riemann-Siegel range " + num(worst_rs) + "), " + num(secs) + " s"};
}

Outcome mother_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  const LadderModel model(LadderModel::options_for(500));
  int points = 0, bad = 0;
  double worst = 0.0;
  for (int L : {30, 50, 100, 500}) {
    for (double U : {0.3, 1.0, 1.5}) {
      ++points;
      const HybridConstants h = compute_hybrid_constants(L, U, model);
      const double rel = verify_mother(h, model) / h.c4;
      worst = std::max(worst, rel);
      bool inside = h.base_seg.contains_open(h.alpha0[0]) && h.base_seg.contains_open(h.alpha0[1]) &&
                    h.rev_seg.contains_open(h.alpha1[0]) && h.rev_seg.contains_open(h.alpha1[1]) &&
                    h.rev_seg.contains_open(h.beta1);
      if (!(rel <= 1e-8) || !inside) ++bad;
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 120.0, std::to_string(points) + " (L,U) points, max residual/c4 " + num(worst) +
                                         ", " + std::to_string(bad) + " failing, " + num(secs) + " s"};
}

Outcome change_of_variables() {
  const LadderModel model(LadderModel::options_for(500));
  double worst = 0.0;
  for (int L : {50, 500}) {
    const SegmentInterval base = base_segment(L, 1.0);
    const SegmentInterval rev = model.reverse_iterate(base);
    const double a = base.a, b = base.b;
    const double s2 = 0.25 * (std::sin(2 * b) - std::sin(2 * a));
    const std::array<std::function<double(double)>, 3> g = {
        [](double) { return 1.0; }, [](double u) { return std::sin(u) * std::sin(u); },
        [](double u) { return std::cos(u) * std::cos(u); }};
    const std::array<double, 3> exact = {b - a, 0.5 * (b - a) - s2, 0.5 * (b - a) + s2};
    for (std::size_t i = 0; i < 3; ++i) {
      const double got = model.integrate_pullback(g[i], rev);
      worst = std::max(worst, std::abs(got - exact[i]) / exact[i]);
    }
  }
  return {worst <= 1e-7, "6 integrals (g = 1, sin^2, cos^2; L = 50, 500), max rel err " + num(worst)};
}

struct Context {
  LadderModel model{LadderModel::options_for(50)};
  HybridConstants h = compute_hybrid_constants(50, 1.0, model);
  LociCache simple{h, Scheme::Simple};
  LociCache cyclic{h, Scheme::Cyclic};
};

Context& context() {
  static Context c;
  return c;
}

// Fresh re-evaluation through the serialized form.
bool reverified(const std::vector<MetaEquation>& eqs, double tol, double* worst) {
  io::json doc;
  doc["tolerance"] = tol;
  doc["equations"] = io::json::array();
  for (const auto& m : eqs) doc["equations"].push_back(io::meta_json(m));
  const VerifyReport rep = verify_artifact(io::json::parse(doc.dump()), tol);
  for (const auto& e : rep.entries) *worst = std::max(*worst, e.residual);
  return rep.all_ok();
}

using Structure = std::vector<std::vector<FactorKey>>;

// A_a B_b + D_b B_a and A_b B_a + D_a B_b written out from the rotations.
std::pair<Structure, Structure> canonical(Scheme scheme, int a, int b) {
  const KindTuple ka = kinds_for_row(scheme, a), kb = kinds_for_row(scheme, b);
  auto sorted = [](Structure s) {
    for (auto& t : s) std::sort(t.begin(), t.end());
    std::sort(s.begin(), s.end());
    return s;
  };
  Structure lhs = {{{ka[0], a, 1}, {ka[1], a, 2}, {kb[2], b, 3}}, {{kb[3], b, 4}, {ka[2], a, 3}}};
  Structure rhs = {{{kb[0], b, 1}, {kb[1], b, 2}, {ka[2], a, 3}}, {{ka[3], a, 4}, {kb[2], b, 3}}};
  return {sorted(lhs), sorted(rhs)};
}

Outcome theorem1_family() {
  const std::vector<std::pair<int, int>> pairs = {{1, 2}, {1, 5}, {2, 5}, {3, 7}, {4, 8},
                                                  {2, 6}, {5, 8}, {3, 4}, {6, 7}, {1, 8}};
  const FamilyResult r = generate_family(context().simple, pairs);
  double worst = 0.0;
  bool shapes = true;
  for (const auto& m : r.equations) {
    worst = std::max(worst, m.residual);
    const auto [lhs, rhs] = canonical(Scheme::Simple, m.row_a, m.row_b);
    shapes = shapes && structure_of(m.lhs) == lhs && structure_of(m.rhs) == rhs;
  }
  const bool fresh = reverified(r.equations, 1e-8, &worst);
  return {r.equations.size() == 10 && r.failures.empty() && fresh && shapes,
          std::to_string(r.equations.size()) + " pairs, max residual " + num(worst) +
              (shapes ? ", shapes canonical" : ", SHAPE MISMATCH")};
}

Outcome theorem2_cell() {
  const FamilyResult r = generate_family(context().cyclic, cell_pairs(0));
  double worst = 0.0;
  bool shapes = true;
  std::set<std::vector<std::vector<ShapeKey>>> distinct;
  std::vector<DisplayDiff> diffs;
  for (const auto& m : r.equations) {
    worst = std::max(worst, m.residual);
    const auto [lhs, rhs] = canonical(Scheme::Cyclic, m.row_a, m.row_b);
    shapes = shapes && structure_of(m.lhs) == lhs && structure_of(m.rhs) == rhs;
    distinct.insert(shape_of(m.lhs));
  }
  diffs = display_diff_for(r.equations);
  const io::json diff_json = io::display_diff_json(diffs);
  bool diff_ok = diffs.size() == 3;
  for (const auto& d : diff_json) diff_ok = diff_ok && !d.at("printed").is_null() && !d.at("generated").is_null();
  std::string labels;
  for (const auto& d : diffs) {
    labels += " (" + std::to_string(d.row_a) + ")x(" + std::to_string(d.row_b) + ") " + d.side + ": " +
              (d.printed ? io::display_label(*d.printed) : "-") + "->" +
              (d.generated ? io::display_label(*d.generated) : "-") + ";";
  }
  const bool fresh = reverified(r.equations, 1e-8, &worst);
  return {r.equations.size() == 6 && distinct.size() == 6 && shapes && fresh && diff_ok,
          std::to_string(r.equations.size()) + " equations, " + std::to_string(distinct.size()) +
              " distinct shapes, max residual " + num(worst) + ", printed-form diffs " +
              std::to_string(diffs.size()) + ":" + labels};
}

Outcome theorem3_cross() {
  const FamilyResult r = generate_family(context().cyclic, cross_cell_pairs({0, 1}));
  double worst = 0.0;
  std::set<std::pair<int, int>> classes;
  int external = 0;
  bool shapes = true;
  for (const auto& m : r.equations) {
    worst = std::max(worst, m.residual);
    classes.insert(m.residue_class());
    external += m.internal() ? 0 : 1;
    const auto [lhs, rhs] = canonical(Scheme::Cyclic, m.row_a, m.row_b);
    shapes = shapes && structure_of(m.lhs) == lhs && structure_of(m.rhs) == rhs;
  }
  const bool fresh = reverified(r.equations, 1e-8, &worst);
  return {r.equations.size() == 24 && r.failures.empty() && classes.size() == 6 && fresh && shapes,
          std::to_string(r.equations.size()) + " pairs (" + std::to_string(external) + " across cells), " +
              std::to_string(classes.size()) + " residue classes, max residual " + num(worst)};
}

Outcome symmetry_properties() {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> idx(1, 16), cell(0, 4), q(1, 4);
  std::vector<std::pair<int, int>> kgrid, ggrid;
  while (kgrid.size() < 20) {
    const int a = idx(rng), b = idx(rng);
    if (a != b) kgrid.emplace_back(a, b);
  }
  while (ggrid.size() < 20) {
    const int r = q(rng), m = cell(rng), n = cell(rng);
    if (m != n) ggrid.emplace_back(4 * m + r, 4 * n + r);
  }
  const SymmetryReport k = check_symmetry(SymmetryKind::K, kgrid, context().simple);
  const SymmetryReport g = check_symmetry(SymmetryKind::G, ggrid, context().cyclic);
  return {k.all_within(1e-10) && k.all_structural && g.all_within(1e-10) && g.all_structural,
          "K: 20 pairs, max dev " + num(k.max_deviation) + (k.all_structural ? ", structural" : ", NOT structural") +
              "; G: 20 pairs, max dev " + num(g.max_deviation) +
              (g.all_structural ? ", structural" : ", NOT structural")};
}

Outcome elimination_soundness() {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> u(1e-3, 1e3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double lambda = u(rng);
    const double Aa = u(rng), Ba = u(rng), Ab = u(rng), Bb = u(rng);
    const auto [lhs, rhs] = crossbreed_values(Aa, Ba, Aa + lambda * Ba, Ab, Bb, Ab + lambda * Bb);
    worst = std::max(worst, relative_gap(lhs, rhs));
  }
  return {worst <= 1e-12, "1000 random instances, max rel gap " + num(worst)};
}

Outcome ladder_diagnostics() {
  const auto t0 = std::chrono::steady_clock::now();
  const LadderModel model(LadderModel::options_for(10000));
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> u(model.anchor_value() + 1.0, kPi * 1e4);
  double worst_rt = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double T = u(rng);
    worst_rt = std::max(worst_rt, std::abs(model.phi1(model.phi1_inverse(T)) - T) / T);
  }
  const auto rows = ladder_table(model, {100, 1000, 10000}, 1.0);
  bool rho_ok = true, band = true;
  std::string table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rho_ok = rho_ok && rows[i].rho > 0.0 && (i == 0 || rows[i].rho > rows[i - 1].rho);
    if (rows[i].L >= 1000) band = band && rows[i].ratio >= 0.5 && rows[i].ratio <= 2.0;
    table += " L=" + std::to_string(rows[i].L) + " rho=" + num(rows[i].rho) + " ratio=" + num(rows[i].ratio) + ";";
  }
  return {worst_rt <= 1e-9 && rho_ok && band,
          "round trip max " + num(worst_rt) + " on 50 samples;" + table + " " + num(seconds_since(t0)) + " s"};
}

Outcome determinism() {
  RunConfig cfg;
  cfg.scheme = Scheme::Cyclic;
  cfg.cells = {0, 1};
  const std::string a = run_generation(cfg).artifact.dump(2);
  const std::string b = run_generation(cfg).artifact.dump(2);
  cfg.jobs = 3;
  const std::string c = run_generation(cfg).artifact.dump(2);
  RunConfig simple;
  simple.m = {1, 6};
  simple.n = {1, 6};
  const std::string d = run_generation(simple).artifact.dump(2);
  const std::string e = run_generation(simple).artifact.dump(2);
  return {a == b && a == c && d == e,
          "cyclic cells 0,1 artifact " + std::to_string(a.size()) + " bytes x3 (jobs 1,1,3), simple 1..6 " +
              std::to_string(d.size()) + " bytes x2, " + (a == b && a == c && d == e ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 special-function oracle suite", oracle_suite},
      {"AC2 mother formula on the (L,U) grid", mother_grid},
      {"AC3 change of variables", change_of_variables},
      {"AC4 simple-scheme family", theorem1_family},
      {"AC5 within-cell cyclic crossbreeds", theorem2_cell},
      {"AC6 cross-cell residue classes", theorem3_cross},
      {"AC7 K and G symmetry", symmetry_properties},
      {"AC8 elimination soundness", elimination_soundness},
      {"AC9 ladder diagnostics", ladder_diagnostics},
      {"AC10 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
