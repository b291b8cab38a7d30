#pragma once

// End-to-end runs: ladder model -> hybrid constants -> level curves -> row
// equations -> crossbred identities, plus re-verification of a saved
// artifact. The command-line tool is a thin layer over these functions.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "metafun/crossbreed.hpp"
#include "metafun/error.hpp"
#include "metafun/hybrid.hpp"
#include "metafun/io/serialize.hpp"
#include "metafun/ladder.hpp"
#include "metafun/levelset.hpp"

namespace metafun {

struct IndexRange {
  int lo = 1;
  int hi = 3;
};

struct RunConfig {
  int L = kDefaultL0;
  double U = 1.0;
  OmegaVariant omega = OmegaVariant::Calibrated;
  double k_sq = 0.5;
  int p = 0;
  Scheme scheme = Scheme::Simple;
  IndexRange m{1, 3};
  IndexRange n{1, 3};
  std::vector<int> cells{0};
  double tol = kIdentityRelTol;
  std::string format = "text";
  std::string out;
  int jobs = 1;
  /// Points per traced polyline in the levelset command (0: no tracing).
  int trace = 0;
  /// L values tabulated by the ladder command.
  std::vector<int> ladder_L{100, 1000, 10000};

  FamilyParams params() const { return {k_sq, p}; }

  void validate() const {
    if (L < kDefaultL0) throw ConfigError("L must be >= " + std::to_string(kDefaultL0));
    if (!(U > 0.0 && U < std::numbers::pi / 2.0)) throw ConfigError("U must lie in (0, pi/2)");
    if (!(k_sq > 0.0 && k_sq < 1.0)) throw ConfigError("k2 must lie in (0, 1)");
    if (m.lo < 1 || m.hi < m.lo || n.lo < 1 || n.hi < n.lo) {
      throw ConfigError("index ranges must be A..B with 1 <= A <= B");
    }
    for (int c : cells) {
      if (c < 0) throw ConfigError("cells must be non-negative");
    }
    if (cells.empty()) throw ConfigError("cells must not be empty");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (trace < 0 || trace == 1) throw ConfigError("trace must be 0 or at least 2 points");
    if (format != "text" && format != "json" && format != "csv" && format != "latex") {
      throw ConfigError("format must be text, json, csv or latex");
    }
    for (int l : ladder_L) {
      if (l < kDefaultL0) throw ConfigError("ladder L values must be >= " + std::to_string(kDefaultL0));
    }
  }
};

inline std::string omega_name(OmegaVariant v) {
  switch (v) {
    case OmegaVariant::LeadingLog: return "leading";
    case OmegaVariant::Calibrated: return "calibrated";
    case OmegaVariant::MeanSquare: return "meansquare";
  }
  return "?";
}

inline OmegaVariant parse_omega(const std::string& s) {
  if (s == "leading") return OmegaVariant::LeadingLog;
  if (s == "calibrated") return OmegaVariant::Calibrated;
  if (s == "meansquare") return OmegaVariant::MeanSquare;
  throw ConfigError("omega must be leading, calibrated or meansquare");
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int out = 0;
  try {
    out = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

inline IndexRange parse_range(const std::string& key, const std::string& v) {
  const auto dots = v.find("..");
  if (dots == std::string::npos) {
    const int x = parse_int(key, v);
    return {x, x};
  }
  return {parse_int(key, v.substr(0, dots)), parse_int(key, v.substr(dots + 2))};
}

inline std::vector<int> parse_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
  return out;
}

}  // namespace detail

/// Applies one `key=value` setting (from a config file or a flag).
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string v = detail::trim(raw);
  if (key == "L") cfg.L = detail::parse_int(key, v);
  else if (key == "U") cfg.U = detail::parse_double(key, v);
  else if (key == "omega") cfg.omega = parse_omega(v);
  else if (key == "k2") cfg.k_sq = detail::parse_double(key, v);
  else if (key == "p") cfg.p = detail::parse_int(key, v);
  else if (key == "scheme") {
    if (v != "simple" && v != "cyclic") throw ConfigError("scheme must be simple or cyclic");
    cfg.scheme = parse_scheme(v);
  } else if (key == "m") cfg.m = detail::parse_range(key, v);
  else if (key == "n") cfg.n = detail::parse_range(key, v);
  else if (key == "cells") cfg.cells = detail::parse_list(key, v);
  else if (key == "tol") cfg.tol = detail::parse_double(key, v);
  else if (key == "format") cfg.format = v;
  else if (key == "out") cfg.out = v;
  else if (key == "jobs") cfg.jobs = detail::parse_int(key, v);
  else if (key == "trace") cfg.trace = detail::parse_int(key, v);
  else if (key == "ladder-L") cfg.ladder_L = detail::parse_list(key, v);
  else throw ConfigError("unknown setting '" + key + "'");
}

/// Reads `key=value` lines; blank lines and lines starting with '#' are skipped.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(cfg, detail::trim(t.substr(0, eq)), t.substr(eq + 1));
  }
}

inline io::json config_json(const RunConfig& cfg) {
  io::json j;
  j["L"] = cfg.L;
  j["U"] = cfg.U;
  j["omega"] = omega_name(cfg.omega);
  j["k2"] = cfg.k_sq;
  j["p"] = cfg.p;
  j["scheme"] = std::string(scheme_name(cfg.scheme));
  j["m"] = io::json::array({cfg.m.lo, cfg.m.hi});
  j["n"] = io::json::array({cfg.n.lo, cfg.n.hi});
  j["cells"] = cfg.cells;
  j["tol"] = cfg.tol;
  return j;
}

inline LadderModel make_model(int max_L, OmegaVariant omega) {
  return LadderModel(LadderModel::options_for(max_L, omega));
}

/// Row pairs of a generation run. Simple: every unordered pair {m, n},
/// m != n, from the two ranges. Cyclic: (4a+q) x (4b+r), q < r, over the
/// listed cells, followed by the equal-residue pairs (4a+q) x (4b+q), a < b.
inline std::vector<std::pair<int, int>> generation_pairs(const RunConfig& cfg) {
  std::vector<std::pair<int, int>> out;
  if (cfg.scheme == Scheme::Simple) {
    std::set<std::pair<int, int>> seen;
    for (int a = cfg.m.lo; a <= cfg.m.hi; ++a) {
      for (int b = cfg.n.lo; b <= cfg.n.hi; ++b) {
        if (a == b) continue;
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        if (seen.insert(key).second) out.push_back(key);
      }
    }
    return out;
  }
  std::vector<int> cells = cfg.cells;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  out = cross_cell_pairs(cells);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      for (int q = 1; q <= 4; ++q) out.emplace_back(4 * cells[i] + q, 4 * cells[j] + q);
    }
  }
  return out;
}

struct GenerationRun {
  HybridConstants hybrid;
  FamilyResult family;
  std::vector<DisplayDiff> display_diff;
  io::json artifact;
};

/// Displayed-form comparison for the within-cell pairs of cell 0 present in
/// `equations`.
inline std::vector<DisplayDiff> display_diff_for(const std::vector<MetaEquation>& equations) {
  std::vector<DisplayDiff> out;
  for (const DisplayForm& form : printed_cell_forms()) {
    for (const MetaEquation& m : equations) {
      if (m.scheme == Scheme::Cyclic && m.row_a == form.row_a && m.row_b == form.row_b) {
        const auto d = diff_display(form, m);
        out.insert(out.end(), d.begin(), d.end());
        break;
      }
    }
  }
  return out;
}

inline GenerationRun run_generation(const RunConfig& cfg) {
  cfg.validate();
  const LadderModel model = make_model(cfg.L, cfg.omega);
  GenerationRun run;
  run.hybrid = compute_hybrid_constants(cfg.L, cfg.U, model);
  LociCache cache(run.hybrid, cfg.scheme, cfg.params());
  run.family = generate_family(cache, generation_pairs(cfg), cfg.tol, cfg.jobs);
  io::json doc;
  doc["config"] = config_json(cfg);
  doc["hybrid"] = io::hybrid_json(run.hybrid);
  doc["tolerance"] = cfg.tol;
  io::json eqs = io::json::array();
  for (const auto& m : run.family.equations) eqs.push_back(io::meta_json(m));
  doc["equations"] = eqs;
  io::json fails = io::json::array();
  for (const auto& f : run.family.failures) {
    fails.push_back({{"rows", io::json::array({f.row_a, f.row_b})}, {"message", f.message}});
  }
  doc["failures"] = fails;
  if (cfg.scheme == Scheme::Cyclic) {
    run.display_diff = display_diff_for(run.family.equations);
    doc["displayed_form_diff"] = io::display_diff_json(run.display_diff);
  }
  run.artifact = std::move(doc);
  return run;
}

struct VerifyEntry {
  std::size_t index = 0;
  std::string parents;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// Stored factor or side values that disagree with fresh evaluation.
  int stale_values = 0;
  bool ok = false;
  std::string error;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  bool all_ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.ok; });
  }
};

/// Recomputes every factor and residual of a saved artifact. Stored values
/// must agree with fresh evaluation to `value_tol` relative and every
/// identity must close to `tol` (the artifact's own tolerance when <= 0).
inline VerifyReport verify_artifact(const io::json& doc, double tol = 0.0, double value_tol = 1e-12) {
  if (!(tol > 0.0)) tol = doc.value("tolerance", kIdentityRelTol);
  VerifyReport rep;
  const auto& eqs = doc.at("equations");
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const auto& e = eqs[i];
    VerifyEntry v;
    v.index = i;
    try {
      v.parents = e.at("parents")[0].get<std::string>() + " x " + e.at("parents")[1].get<std::string>();
      auto side = [&](const io::json& terms) {
        double total = 0.0;
        for (const auto& term : terms) {
          double prod = 1.0;
          for (const auto& fj : term) {
            const double fresh = io::factor_from_json(fj).evaluate();
            if (relative_gap(fresh, fj.at("value").get<double>()) > value_tol) ++v.stale_values;
            prod *= fresh;
          }
          total += prod;
        }
        return total;
      };
      v.lhs = side(e.at("lhs_factors"));
      v.rhs = side(e.at("rhs_factors"));
      if (relative_gap(v.lhs, e.at("lhs_value").get<double>()) > value_tol) ++v.stale_values;
      if (relative_gap(v.rhs, e.at("rhs_value").get<double>()) > value_tol) ++v.stale_values;
      v.residual = relative_gap(v.lhs, v.rhs);
      v.ok = v.residual <= tol && v.stale_values == 0;
    } catch (const std::exception& ex) {
      v.error = ex.what();
      v.ok = false;
    }
    rep.entries.push_back(std::move(v));
  }
  return rep;
}

struct LadderRow {
  int L = 0;
  double T = 0.0;
  double T_rev = 0.0;
  double gap = 0.0;
  double rho = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
  double round_trip = 0.0;
};

/// pi (1 - gamma_E) L / ln L.
inline double rho_prediction(int L) {
  const double l = static_cast<double>(L);
  return std::numbers::pi * (1.0 - kEulerGamma) * l / std::log(l);
}

inline std::vector<LadderRow> ladder_table(const LadderModel& model, const std::vector<int>& Ls, double U) {
  std::vector<LadderRow> out;
  for (int L : Ls) {
    LadderRow r;
    r.L = L;
    r.T = std::numbers::pi * static_cast<double>(L);
    r.T_rev = model.phi1_inverse(r.T);
    r.gap = r.T_rev - r.T;
    r.rho = model.rho_distance(L, U);
    r.predicted = rho_prediction(L);
    r.ratio = r.rho / r.predicted;
    r.round_trip = std::abs(model.phi1(r.T_rev) - r.T) / r.T;
    out.push_back(r);
  }
  return out;
}

}  // namespace metafun
