#pragma once

// JSON, CSV and LaTeX renderings of hybrid constants, locus points and
// identities. Doubles are written in shortest round-trip form, so equal
// inputs always give byte-identical output.

#include <charconv>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "metafun/crossbreed.hpp"
#include "metafun/hybrid.hpp"
#include "metafun/levelset.hpp"

namespace metafun::io {

using nlohmann::json;

/// Shortest decimal string that reads back as exactly `x`.
inline std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline json tag_json(const FunctionTag& tag) {
  json j;
  j["tag"] = std::string(kind_name(tag.kind));
  if (tag.kind == FunctionKind::JacobiCn) j["k_sq"] = tag.k_sq;
  if (tag.kind == FunctionKind::BesselJ) j["p"] = tag.p;
  return j;
}

inline FunctionTag tag_from_json(const json& j) {
  const FunctionKind kind = parse_kind(j.at("tag").get<std::string>());
  switch (kind) {
    case FunctionKind::Zeta: return FunctionTag::zeta();
    case FunctionKind::Gamma: return FunctionTag::gamma();
    case FunctionKind::JacobiCn: return FunctionTag::jacobi_cn(j.at("k_sq").get<double>());
    case FunctionKind::BesselJ: return FunctionTag::bessel_j(j.at("p").get<int>());
  }
  throw DomainError("bad tag");
}

inline json segment_json(const SegmentInterval& s) { return json::array({s.a, s.b}); }

inline json hybrid_json(const HybridConstants& h) {
  json j;
  j["L"] = h.L;
  j["U"] = h.U;
  j["base_seg"] = segment_json(h.base_seg);
  j["rev_seg"] = segment_json(h.rev_seg);
  j["alpha0"] = json::array({h.alpha0[0], h.alpha0[1]});
  j["alpha1"] = json::array({h.alpha1[0], h.alpha1[1]});
  j["beta1"] = h.beta1;
  j["c1"] = h.c1;
  j["c2"] = h.c2;
  j["c3"] = h.c3;
  j["c4"] = h.c4;
  j["lambda"] = h.lambda;
  j["residual"] = h.residual;
  return j;
}

inline HybridConstants hybrid_from_json(const json& j) {
  HybridConstants h;
  h.L = j.at("L").get<int>();
  h.U = j.at("U").get<double>();
  h.base_seg = {j.at("base_seg")[0].get<double>(), j.at("base_seg")[1].get<double>()};
  h.rev_seg = {j.at("rev_seg")[0].get<double>(), j.at("rev_seg")[1].get<double>()};
  h.alpha0 = {j.at("alpha0")[0].get<double>(), j.at("alpha0")[1].get<double>()};
  h.alpha1 = {j.at("alpha1")[0].get<double>(), j.at("alpha1")[1].get<double>()};
  h.beta1 = j.at("beta1").get<double>();
  h.c1 = j.at("c1").get<double>();
  h.c2 = j.at("c2").get<double>();
  h.c3 = j.at("c3").get<double>();
  h.c4 = j.at("c4").get<double>();
  h.lambda = j.at("lambda").get<double>();
  h.residual = j.at("residual").get<double>();
  return h;
}

inline json locus_json(const LocusPoint& p) {
  json j = tag_json(p.tag);
  j["n"] = p.n;
  j["c"] = p.target_c;
  j["re"] = p.s.real();
  j["im"] = p.s.imag();
  j["achieved"] = p.achieved;
  j["search_id"] = p.search_id;
  return j;
}

inline json factor_json(const Factor& f) {
  json j = tag_json(f.tag);
  j["n"] = f.multiplier();
  j["row"] = f.row;
  j["slot"] = f.slot;
  j["re"] = f.s.real();
  j["im"] = f.s.imag();
  j["value"] = f.evaluate();
  return j;
}

inline Factor factor_from_json(const json& j) {
  Factor f;
  f.tag = tag_from_json(j);
  f.row = j.at("row").get<int>();
  f.slot = j.at("slot").get<int>();
  f.s = {j.at("re").get<double>(), j.at("im").get<double>()};
  if (j.at("n").get<int>() != f.row) throw DomainError("factor: multiplier differs from row");
  return f;
}

inline json expression_json(const Expression& e) {
  json terms = json::array();
  for (const Term& t : e.terms) {
    json term = json::array();
    for (const Factor& f : t) term.push_back(factor_json(f));
    terms.push_back(term);
  }
  return terms;
}

inline Expression expression_from_json(const json& j) {
  Expression e;
  for (const auto& term : j) {
    Term t;
    for (const auto& f : term) t.push_back(factor_from_json(f));
    e.terms.push_back(std::move(t));
  }
  return e;
}

inline json meta_json(const MetaEquation& m) {
  json j;
  j["parents"] = json::array({m.parent_a, m.parent_b});
  j["rows"] = json::array({m.row_a, m.row_b});
  if (m.scheme == Scheme::Cyclic) {
    const auto [qa, qb] = m.residue_class();
    j["residue_class"] = json::array({qa, qb});
    j["interaction"] = m.internal() ? "internal" : "external";
  }
  j["lhs_factors"] = expression_json(m.lhs);
  j["rhs_factors"] = expression_json(m.rhs);
  j["lhs_value"] = m.lhs_value;
  j["rhs_value"] = m.rhs_value;
  j["residual"] = m.residual;
  return j;
}

inline const char* kind_symbol(FunctionKind k) {
  switch (k) {
    case FunctionKind::Zeta: return "zeta";
    case FunctionKind::Gamma: return "Gamma";
    case FunctionKind::JacobiCn: return "cn";
    case FunctionKind::BesselJ: return "J_p";
  }
  return "?";
}

inline json display_factor_json(const DisplayFactor& f) {
  return json{{"tag", std::string(kind_name(f.kind))}, {"n", f.multiplier}, {"slot", f.slot}, {"sup", f.sup}};
}

/// Plain-text label such as "Gamma(3 s_4^3)".
inline std::string display_label(const DisplayFactor& f) {
  return std::string(kind_symbol(f.kind)) + "(" + std::to_string(f.multiplier) + " s_" +
         std::to_string(f.slot) + "^" + std::to_string(f.sup) + ")";
}

inline json display_diff_json(const std::vector<DisplayDiff>& diffs) {
  json out = json::array();
  for (const auto& d : diffs) {
    json j;
    j["rows"] = json::array({d.row_a, d.row_b});
    j["side"] = d.side;
    j["term"] = d.term;
    j["printed"] = d.printed ? json{{"factor", display_factor_json(*d.printed)},
                                    {"label", display_label(*d.printed)}}
                             : json(nullptr);
    j["generated"] = d.generated ? json{{"factor", display_factor_json(*d.generated)},
                                        {"label", display_label(*d.generated)}}
                                 : json(nullptr);
    out.push_back(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// LaTeX

inline std::string latex_factor(const Factor& f, int p) {
  const std::string mult = f.row == 1 ? "" : std::to_string(f.row);
  const std::string arg = mult + "s_{" + std::to_string(f.slot) + "}^{" + std::to_string(f.row) + "}";
  switch (f.tag.kind) {
    case FunctionKind::Zeta: return "|\\zeta(" + arg + ")|";
    case FunctionKind::Gamma: return "|\\Gamma(" + arg + ")|";
    case FunctionKind::JacobiCn: return "|\\mathrm{cn}(" + arg + ",k)|";
    case FunctionKind::BesselJ: return "|J_{" + std::to_string(p) + "}(" + arg + ")|";
  }
  return "";
}

inline std::string latex_expression(const Expression& e) {
  std::string out;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    if (i) out += "+";
    for (const Factor& f : e.terms[i]) out += latex_factor(f, f.tag.p);
  }
  return out;
}

/// One identity as a LaTeX split environment headed by its parent rows.
inline std::string latex_meta(const MetaEquation& m) {
  std::ostringstream os;
  os << "\\begin{equation*}\n\\begin{split}\n";
  os << "& (" << m.row_a << ")\\times(" << m.row_b << ") \\ \\Rightarrow \\\\\n";
  os << "& " << latex_expression(m.lhs) << "= \\\\\n";
  os << "& = " << latex_expression(m.rhs) << "\n";
  os << "\\end{split}\n\\end{equation*}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV

inline const char* kLocusCsvHeader = "tag,n,c,re,im,achieved\n";

inline std::string locus_csv_row(const LocusPoint& p) {
  return std::string(kind_name(p.tag.kind)) + "," + std::to_string(p.n) + "," + fmt(p.target_c) + "," +
         fmt(p.s.real()) + "," + fmt(p.s.imag()) + "," + fmt(p.achieved) + "\n";
}

inline const char* kResidualCsvHeader = "parent_a,parent_b,lhs_value,rhs_value,residual\n";

inline std::string residual_csv_row(const MetaEquation& m) {
  return m.parent_a + "," + m.parent_b + "," + fmt(m.lhs_value) + "," + fmt(m.rhs_value) + "," +
         fmt(m.residual) + "\n";
}

}  // namespace metafun::io
