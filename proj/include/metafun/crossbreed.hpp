#pragma once

// Row equations with a neutral factor and their crossbreeding.
//
// Every row r of a family reads A_r + lambda B_r = D_r with
//     A_r = |F_1(r s_1^r)| |F_2(r s_2^r)|,  B_r = |F_3(r s_3^r)|,  D_r = |F_4(r s_4^r)|,
// where slot l lies on the level curve |F_l| = c_l and lambda is the neutral
// factor of the hybrid constants. Two rows a != b share lambda, and
// eliminating it gives the lambda-free identity
//     A_a B_b + D_b B_a = A_b B_a + D_a B_b.
//
// Factors are kept symbolically (function, row, slot, point) so that the
// structure of an identity can be compared term by term; every numerical
// value is recomputed from the stored point, never read back from a cache.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "metafun/error.hpp"
#include "metafun/hybrid.hpp"
#include "metafun/levelset.hpp"
#include "metafun/scheme.hpp"

namespace metafun {

/// Default relative tolerance for identities built from locus points.
inline constexpr double kIdentityRelTol = 1e-8;

/// |F(row * s)| with s the slot's locus point.
struct Factor {
  FunctionTag tag;
  int row = 1;
  int slot = 1;
  Complex s;

  int multiplier() const { return row; }
  double evaluate() const { return eval_abs(tag, row, s); }
};

using Term = std::vector<Factor>;

/// A sum of products of factors.
struct Expression {
  std::vector<Term> terms;

  double evaluate() const {
    double total = 0.0;
    for (const Term& t : terms) {
      double prod = 1.0;
      for (const Factor& f : t) prod *= f.evaluate();
      total += prod;
    }
    return total;
  }
};

/// Identity of a factor: function symbol, row and slot.
using FactorKey = std::tuple<FunctionKind, int, int>;
/// Row-free identity: function symbol and slot (which fixes the target c).
using ShapeKey = std::pair<FunctionKind, int>;

inline FactorKey factor_key(const Factor& f) { return {f.tag.kind, f.row, f.slot}; }

/// Expression as a sorted list of sorted factor-key lists.
inline std::vector<std::vector<FactorKey>> structure_of(const Expression& e) {
  std::vector<std::vector<FactorKey>> out;
  for (const Term& t : e.terms) {
    std::vector<FactorKey> keys;
    for (const Factor& f : t) keys.push_back(factor_key(f));
    std::sort(keys.begin(), keys.end());
    out.push_back(std::move(keys));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Same as structure_of with rows forgotten.
inline std::vector<std::vector<ShapeKey>> shape_of(const Expression& e) {
  std::vector<std::vector<ShapeKey>> out;
  for (const Term& t : e.terms) {
    std::vector<ShapeKey> keys;
    for (const Factor& f : t) keys.emplace_back(f.tag.kind, f.slot);
    std::sort(keys.begin(), keys.end());
    out.push_back(std::move(keys));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RowEquation {
  Scheme scheme = Scheme::Simple;
  int row = 1;
  /// q in 1..4 for the cyclic scheme, 0 for the simple one.
  int residue_q = 0;
  std::array<LocusPoint, 4> points;
  double A = 0.0;
  double B = 0.0;
  double D = 0.0;
  double lambda = 0.0;

  std::string id() const { return std::string(scheme_name(scheme)) + ":" + std::to_string(row); }
  Factor factor(int slot) const {
    const LocusPoint& p = points[static_cast<std::size_t>(slot - 1)];
    return {p.tag, row, slot, p.s};
  }
  Term a_term() const { return {factor(1), factor(2)}; }
  double residual() const { return std::abs(A + lambda * B - D) / D; }
  /// The row itself as lhs / rhs expressions (lambda enters as a number).
  std::vector<Factor> factor_refs() const { return {factor(1), factor(2), factor(3), factor(4)}; }
};

struct MetaEquation {
  Scheme scheme = Scheme::Simple;
  int row_a = 0;
  int row_b = 0;
  std::string parent_a;
  std::string parent_b;
  Expression lhs;
  Expression rhs;
  double lhs_value = 0.0;
  double rhs_value = 0.0;
  /// |lhs - rhs| / max(lhs, rhs), from fresh evaluation.
  double residual = 0.0;

  /// Unordered residue pair (q_a, q_b) with q_a <= q_b; cyclic scheme only.
  std::pair<int, int> residue_class() const {
    const int qa = residue_of(row_a);
    const int qb = residue_of(row_b);
    return {std::min(qa, qb), std::max(qa, qb)};
  }
  /// Both rows in the same cell of four consecutive rows.
  bool internal() const { return cell_of(row_a) == cell_of(row_b); }
};

inline double relative_gap(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

inline RowEquation build_row_equation(Scheme scheme, int row, const HybridConstants& h,
                                      const std::array<LocusPoint, 4>& loci) {
  if (row < 1) throw DomainError("build_row_equation: row must be positive");
  const KindTuple kinds = kinds_for_row(scheme, row);
  const auto targets = h.targets();
  for (std::size_t l = 0; l < 4; ++l) {
    const LocusPoint& p = loci[l];
    if (p.n != row || p.tag.kind != kinds[l]) {
      throw ProvenanceMismatch("row " + std::to_string(row) + " slot " + std::to_string(l + 1) +
                               ": locus was built for another row or function");
    }
    if (relative_gap(p.target_c, targets[l]) > 1e-15) {
      throw ProvenanceMismatch("row " + std::to_string(row) + " slot " + std::to_string(l + 1) +
                               ": locus target differs from the hybrid constant");
    }
  }
  RowEquation eq;
  eq.scheme = scheme;
  eq.row = row;
  eq.residue_q = scheme == Scheme::Cyclic ? residue_of(row) : 0;
  eq.points = loci;
  eq.A = loci[0].achieved * loci[1].achieved;
  eq.B = loci[2].achieved;
  eq.D = loci[3].achieved;
  eq.lambda = h.lambda;
  return eq;
}

/// Eliminates the neutral factor between rows a and b.
inline MetaEquation crossbreed(const RowEquation& a, const RowEquation& b) {
  if (a.scheme == b.scheme && a.row == b.row) {
    throw DomainError("crossbreed: a row cannot be crossed with itself");
  }
  if (relative_gap(a.lambda, b.lambda) > 1e-15) {
    throw NeutralFactorMismatch("crossbreed: rows " + a.id() + " and " + b.id() +
                                " carry different neutral factors");
  }
  MetaEquation m;
  m.scheme = a.scheme;
  m.row_a = a.row;
  m.row_b = b.row;
  m.parent_a = a.id();
  m.parent_b = b.id();
  Term t1 = a.a_term();
  t1.push_back(b.factor(3));
  m.lhs.terms = {t1, {b.factor(4), a.factor(3)}};
  Term t2 = b.a_term();
  t2.push_back(a.factor(3));
  m.rhs.terms = {t2, {a.factor(4), b.factor(3)}};
  m.lhs_value = m.lhs.evaluate();
  m.rhs_value = m.rhs.evaluate();
  m.residual = relative_gap(m.lhs_value, m.rhs_value);
  return m;
}

/// Crossbred identity for plain numbers (A_i + lambda B_i = D_i, i = a, b):
/// returns {lhs, rhs} = {A_a B_b + D_b B_a, A_b B_a + D_a B_b}.
inline std::pair<double, double> crossbreed_values(double A_a, double B_a, double D_a, double A_b,
                                                   double B_b, double D_b) {
  return {A_a * B_b + D_b * B_a, A_b * B_a + D_a * B_b};
}

/// Write-once cache of locus families keyed by row, shared by all
/// identities of one scheme under one set of hybrid constants.
class LociCache {
 public:
  LociCache(HybridConstants h, Scheme scheme, FamilyParams params = {})
      : h_(std::move(h)), scheme_(scheme), params_(params) {}

  const HybridConstants& constants() const { return h_; }
  Scheme scheme() const { return scheme_; }
  const FamilyParams& params() const { return params_; }

  /// Locus points of `row`; computed on first use, then read-only.
  const std::array<LocusPoint, 4>& family(int row) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = rows_.find(row);
      if (it != rows_.end()) return it->second;
    }
    auto fam = build_locus_family(h_, scheme_, row, params_);
    std::lock_guard<std::mutex> lock(mu_);
    return rows_.emplace(row, std::move(fam)).first->second;
  }

  RowEquation row_equation(int row) { return build_row_equation(scheme_, row, h_, family(row)); }

  /// Fills the cache for `rows` on up to `jobs` threads. Results do not
  /// depend on `jobs`; errors are left for the first sequential access.
  void prefetch(const std::vector<int>& rows, int jobs) {
    std::vector<int> todo;
    {
      std::lock_guard<std::mutex> lock(mu_);
      for (int r : std::set<int>(rows.begin(), rows.end())) {
        if (!rows_.count(r)) todo.push_back(r);
      }
    }
    if (jobs <= 1 || todo.size() <= 1) return;
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), todo.size());
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([this, &todo, w, workers] {
        for (std::size_t i = w; i < todo.size(); i += workers) {
          try {
            family(todo[i]);
          } catch (const Error&) {
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  /// Replaces the stored point of one slot; used for fault injection.
  void override_point(int row, int slot, const LocusPoint& p) {
    family(row);
    std::lock_guard<std::mutex> lock(mu_);
    rows_.at(row)[static_cast<std::size_t>(slot - 1)] = p;
  }

 private:
  HybridConstants h_;
  Scheme scheme_;
  FamilyParams params_;
  std::mutex mu_;
  std::map<int, std::array<LocusPoint, 4>> rows_;
};

struct PairFailure {
  int row_a = 0;
  int row_b = 0;
  std::string message;
};

struct FamilyResult {
  std::vector<MetaEquation> equations;
  std::vector<PairFailure> failures;
};

/// Crossbreeds every pair. A pair that fails (locus not found, identity
/// residual above tolerance) is reported and the rest proceed.
inline FamilyResult generate_family(LociCache& cache, const std::vector<std::pair<int, int>>& pairs,
                                    double tol = kIdentityRelTol, int jobs = 1) {
  std::vector<int> rows;
  for (auto [a, b] : pairs) {
    rows.push_back(a);
    rows.push_back(b);
  }
  cache.prefetch(rows, jobs);
  FamilyResult out;
  for (auto [a, b] : pairs) {
    try {
      if (a == b) throw DomainError("pair rows must differ");
      MetaEquation m = crossbreed(cache.row_equation(a), cache.row_equation(b));
      if (!(m.residual <= tol)) {
        out.failures.push_back({a, b, "residual " + std::to_string(m.residual) + " above tolerance"});
        continue;
      }
      out.equations.push_back(std::move(m));
    } catch (const Error& e) {
      out.failures.push_back({a, b, e.what()});
    }
  }
  return out;
}

/// All six pairs q_a < q_b of one cell m: rows 4m + q.
inline std::vector<std::pair<int, int>> cell_pairs(int m) {
  std::vector<std::pair<int, int>> out;
  for (int qa = 1; qa <= 4; ++qa) {
    for (int qb = qa + 1; qb <= 4; ++qb) out.emplace_back(4 * m + qa, 4 * m + qb);
  }
  return out;
}

/// Pairs (4m + q) x (4n + r) for the given cells and all q < r.
inline std::vector<std::pair<int, int>> cross_cell_pairs(const std::vector<int>& cells) {
  std::vector<std::pair<int, int>> out;
  for (int m : cells) {
    for (int n : cells) {
      for (int q = 1; q <= 4; ++q) {
        for (int r = q + 1; r <= 4; ++r) out.emplace_back(4 * m + q, 4 * n + r);
      }
    }
  }
  return out;
}

/// K(m, n) = |zeta(m s_1^m)| |Gamma(m s_2^m)| |cn(n s_3^n)| + |J_p(n s_4^n)| |cn(m s_3^m)|
/// as an expression over the simple-scheme loci.
inline Expression k_expression(LociCache& simple, int m, int n) {
  if (simple.scheme() != Scheme::Simple) throw DomainError("k_value: needs the simple scheme");
  const RowEquation a = simple.row_equation(m);
  const RowEquation b = simple.row_equation(n);
  Term t1 = a.a_term();
  t1.push_back(b.factor(3));
  return Expression{{t1, {b.factor(4), a.factor(3)}}};
}

inline double k_value(LociCache& simple, int m, int n) { return k_expression(simple, m, n).evaluate(); }

/// G(4m+q, 4n+q): the same combination over two cyclic rows of equal residue.
inline Expression g_expression(LociCache& cyclic, int row_a, int row_b) {
  if (cyclic.scheme() != Scheme::Cyclic) throw DomainError("g_value: needs the cyclic scheme");
  if (residue_of(row_a) != residue_of(row_b)) {
    throw ResidueMismatch("g_value: rows " + std::to_string(row_a) + " and " +
                          std::to_string(row_b) + " have different residues mod 4");
  }
  const RowEquation a = cyclic.row_equation(row_a);
  const RowEquation b = cyclic.row_equation(row_b);
  Term t1 = a.a_term();
  t1.push_back(b.factor(3));
  return Expression{{t1, {b.factor(4), a.factor(3)}}};
}

inline double g_value(LociCache& cyclic, int row_a, int row_b) {
  return g_expression(cyclic, row_a, row_b).evaluate();
}

enum class SymmetryKind { K, G };

struct SymmetryEntry {
  int a = 0;
  int b = 0;
  double forward = 0.0;
  double backward = 0.0;
  double deviation = 0.0;
  /// Both orders are the same sum of products of (function, slot) factors.
  bool structural = false;
  /// Both rows in one cell (only meaningful for G).
  bool internal = false;
  std::string error;
};

struct SymmetryReport {
  std::vector<SymmetryEntry> entries;
  double max_deviation = 0.0;
  bool all_structural = true;
  bool all_within(double tol) const {
    for (const auto& e : entries) {
      if (!e.error.empty() || !(e.deviation <= tol)) return false;
    }
    return true;
  }
};

/// Evaluates X(a, b) and X(b, a) for X = K or G over each pair.
inline SymmetryReport check_symmetry(SymmetryKind kind, const std::vector<std::pair<int, int>>& grid,
                                     LociCache& cache) {
  SymmetryReport rep;
  for (auto [a, b] : grid) {
    SymmetryEntry e;
    e.a = a;
    e.b = b;
    try {
      const Expression fwd = kind == SymmetryKind::K ? k_expression(cache, a, b) : g_expression(cache, a, b);
      const Expression bwd = kind == SymmetryKind::K ? k_expression(cache, b, a) : g_expression(cache, b, a);
      e.forward = fwd.evaluate();
      e.backward = bwd.evaluate();
      e.deviation = relative_gap(e.forward, e.backward);
      e.structural = shape_of(fwd) == shape_of(bwd);
      e.internal = cell_of(a) == cell_of(b);
    } catch (const Error& err) {
      e.error = err.what();
    }
    rep.max_deviation = std::max(rep.max_deviation, e.deviation);
    rep.all_structural = rep.all_structural && e.structural && e.error.empty();
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Displayed forms of the six within-cell identities and their index slips.

/// A factor as displayed: |F(multiplier * s_slot^sup)|. In a correct display
/// sup equals the multiplier.
struct DisplayFactor {
  FunctionKind kind;
  int multiplier;
  int slot;
  int sup;

  friend auto operator<=>(const DisplayFactor&, const DisplayFactor&) = default;
};

struct DisplayForm {
  int row_a;
  int row_b;
  std::vector<std::vector<DisplayFactor>> lhs;
  std::vector<std::vector<DisplayFactor>> rhs;
};

/// The six identities of cell 0, as commonly displayed (including three
/// factors whose indices or function symbol are misprinted).
inline const std::vector<DisplayForm>& printed_cell_forms() {
  using K = FunctionKind;
  constexpr K Z = K::Zeta, G = K::Gamma, C = K::JacobiCn, J = K::BesselJ;
  static const std::vector<DisplayForm> forms = {
      {1, 2, {{{Z, 1, 1, 1}, {G, 1, 2, 1}, {J, 2, 3, 2}}, {{Z, 2, 4, 2}, {C, 1, 3, 1}}},
       {{{G, 2, 1, 2}, {C, 2, 2, 2}, {C, 1, 3, 1}}, {{J, 1, 4, 1}, {J, 2, 3, 2}}}},
      {1, 3, {{{Z, 1, 1, 1}, {Z, 3, 3, 3}, {G, 1, 2, 1}}, {{G, 3, 4, 3}, {C, 1, 3, 1}}},
       {{{C, 1, 3, 1}, {C, 3, 1, 3}, {J, 3, 2, 3}}, {{J, 1, 4, 1}, {Z, 3, 3, 3}}}},
      {1, 4, {{{Z, 1, 1, 1}, {G, 1, 2, 1}, {G, 4, 3, 4}}, {{C, 1, 3, 1}, {C, 4, 4, 4}}},
       {{{Z, 4, 2, 4}, {J, 4, 1, 4}, {C, 1, 3, 1}}, {{J, 1, 4, 1}, {G, 4, 3, 4}}}},
      {2, 3, {{{Z, 3, 3, 3}, {G, 2, 1, 2}, {C, 2, 2, 2}}, {{G, 3, 3, 4}, {J, 2, 3, 2}}},
       {{{C, 3, 1, 3}, {J, 2, 3, 2}, {J, 3, 2, 3}}, {{Z, 3, 3, 3}, {Z, 2, 4, 2}}}},
      {2, 4, {{{G, 2, 1, 2}, {G, 4, 3, 4}, {C, 2, 2, 2}}, {{C, 4, 4, 4}, {J, 2, 3, 2}}},
       {{{J, 2, 3, 2}, {J, 4, 1, 4}, {Z, 4, 2, 4}}, {{Z, 2, 4, 2}, {Z, 4, 3, 4}}}},
      {3, 4, {{{C, 3, 1, 3}, {J, 3, 2, 3}, {G, 4, 3, 4}}, {{C, 4, 4, 4}, {Z, 3, 3, 3}}},
       {{{J, 4, 1, 4}, {Z, 3, 3, 3}, {Z, 4, 2, 4}}, {{G, 3, 3, 4}, {G, 4, 3, 4}}}},
  };
  return forms;
}

inline std::vector<std::vector<DisplayFactor>> display_of(const Expression& e) {
  std::vector<std::vector<DisplayFactor>> out;
  for (const Term& t : e.terms) {
    std::vector<DisplayFactor> d;
    for (const Factor& f : t) d.push_back({f.tag.kind, f.row, f.slot, f.row});
    out.push_back(std::move(d));
  }
  return out;
}

/// One factor that differs between a displayed form and the generated one.
struct DisplayDiff {
  int row_a = 0;
  int row_b = 0;
  std::string side;  // "lhs" or "rhs"
  int term = 0;      // 1-based within the side
  std::optional<DisplayFactor> printed;
  std::optional<DisplayFactor> generated;
};

/// Aligns terms of equal factor count and reports the factors present on
/// one side only.
inline std::vector<DisplayDiff> diff_display(const DisplayForm& printed, const MetaEquation& generated) {
  std::vector<DisplayDiff> out;
  auto side = [&](const std::vector<std::vector<DisplayFactor>>& p,
                  const std::vector<std::vector<DisplayFactor>>& g, const char* name) {
    std::vector<bool> used(g.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::size_t match = g.size();
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (!used[j] && g[j].size() == p[i].size()) {
          match = j;
          break;
        }
      }
      std::multiset<DisplayFactor> ps(p[i].begin(), p[i].end());
      std::multiset<DisplayFactor> gs;
      if (match < g.size()) {
        used[match] = true;
        gs.insert(g[match].begin(), g[match].end());
      }
      std::vector<DisplayFactor> only_p, only_g;
      std::set_difference(ps.begin(), ps.end(), gs.begin(), gs.end(), std::back_inserter(only_p));
      std::set_difference(gs.begin(), gs.end(), ps.begin(), ps.end(), std::back_inserter(only_g));
      const std::size_t k = std::max(only_p.size(), only_g.size());
      for (std::size_t t = 0; t < k; ++t) {
        DisplayDiff d{printed.row_a, printed.row_b, name, static_cast<int>(i + 1), std::nullopt, std::nullopt};
        if (t < only_p.size()) d.printed = only_p[t];
        if (t < only_g.size()) d.generated = only_g[t];
        out.push_back(d);
      }
    }
  };
  side(printed.lhs, display_of(generated.lhs), "lhs");
  side(printed.rhs, display_of(generated.rhs), "rhs");
  return out;
}

}  // namespace metafun
