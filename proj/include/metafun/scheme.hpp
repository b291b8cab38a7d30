#pragma once

// Assignment of the four function symbols to the slots of a row.
//
// Simple scheme: every row n uses (zeta, Gamma, cn, J_p) at multiplier n.
// Cyclic scheme: row r uses the residue q = ((r - 1) mod 4) + 1 and the
// left rotation of (zeta, Gamma, cn, J_p) by q - 1, again at multiplier r.
// In both schemes slot l of a row lies on the level curve |F(r s)| = c_l.

#include <array>
#include <string>
#include <string_view>

#include "metafun/error.hpp"
#include "metafun/specfun/function_tag.hpp"

namespace metafun {

enum class Scheme { Simple, Cyclic };

inline std::string_view scheme_name(Scheme s) { return s == Scheme::Simple ? "simple" : "cyclic"; }

inline Scheme parse_scheme(std::string_view name) {
  if (name == "simple") return Scheme::Simple;
  if (name == "cyclic") return Scheme::Cyclic;
  throw DomainError("unknown scheme: " + std::string(name));
}

/// Fixed parameters of cn(., k) and J_p shared by a whole family.
struct FamilyParams {
  double k_sq = 0.5;
  int p = 0;
};

using KindTuple = std::array<FunctionKind, 4>;

/// Left rotation of (zeta, Gamma, cn, J_p) by q - 1, q in 1..4.
inline KindTuple row_assignment(int q) {
  if (q < 1 || q > 4) throw DomainError("row_assignment: q must lie in 1..4");
  constexpr KindTuple base = {FunctionKind::Zeta, FunctionKind::Gamma, FunctionKind::JacobiCn,
                              FunctionKind::BesselJ};
  KindTuple out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>((i + q - 1) % 4)];
  return out;
}

/// q = ((row - 1) mod 4) + 1.
inline int residue_of(int row) {
  if (row < 1) throw DomainError("row index must be positive");
  return (row - 1) % 4 + 1;
}

/// Cell index m of row 4m + q.
inline int cell_of(int row) { return (row - 1) / 4; }

inline FunctionTag make_tag(FunctionKind kind, const FamilyParams& params) {
  switch (kind) {
    case FunctionKind::Zeta: return FunctionTag::zeta();
    case FunctionKind::Gamma: return FunctionTag::gamma();
    case FunctionKind::JacobiCn: return FunctionTag::jacobi_cn(params.k_sq);
    case FunctionKind::BesselJ: return FunctionTag::bessel_j(params.p);
  }
  throw DomainError("make_tag: bad kind");
}

inline KindTuple kinds_for_row(Scheme scheme, int row) {
  return row_assignment(scheme == Scheme::Simple ? 1 : residue_of(row));
}

}  // namespace metafun
