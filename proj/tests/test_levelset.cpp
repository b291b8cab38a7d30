#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "metafun/levelset.hpp"

using namespace metafun;

namespace {

constexpr double kPi = std::numbers::pi;

const HybridConstants& constants() {
  static const HybridConstants h = [] {
    const LadderModel m(LadderModel::options_for(50));
    return compute_hybrid_constants(50, 1.0, m);
  }();
  return h;
}

// |zeta(w)| from the Dirichlet series with an Euler-Maclaurin tail, Re w > 2.
double zeta_abs_direct(Complex w) {
  const int N = 2000;
  Complex sum = 0.0;
  for (int k = 1; k < N; ++k) sum += std::exp(-w * std::log(static_cast<double>(k)));
  const Complex nw = std::exp(-w * std::log(static_cast<double>(N)));
  sum += nw * static_cast<double>(N) / (w - 1.0) + 0.5 * nw + w * nw / (12.0 * N);
  return std::abs(sum);
}

LocusRequest request(FunctionTag tag, int n, double c, Rect r) {
  LocusRequest q;
  q.tag = tag;
  q.n = n;
  q.target_c = c;
  q.region = r;
  return q;
}

}  // namespace

TEST(FindLocus, GammaNearOne) {
  const LocusPoint p = find_locus_point(request(FunctionTag::gamma(), 1, 1.0, {0.5, 1.5, 0.0, 0.5}));
  EXPECT_TRUE(validates(p));
  EXPECT_NEAR(std::abs(eval_gamma(p.s)), 1.0, 1e-10);
}

TEST(FindLocus, BesselAtOrigin) {
  const LocusPoint p = find_locus_point(request(FunctionTag::bessel_j(0), 1, 1.0, {-0.5, 0.5, 0.0, 0.5}));
  EXPECT_TRUE(validates(p));
  EXPECT_NEAR(std::abs(p.s), 0.0, 1e-8);
}

TEST(FindLocus, ZetaTwo) {
  const LocusPoint p =
      find_locus_point(request(FunctionTag::zeta(), 1, kPi * kPi / 6.0, {1.5, 2.5, 0.0, 0.0}));
  EXPECT_NEAR(p.s.real(), 2.0, 1e-10);
  EXPECT_EQ(p.s.imag(), 0.0);
}

TEST(FindLocus, ZetaDoubledCrossChecked) {
  const LocusPoint p = find_locus_point(request(FunctionTag::zeta(), 2, 1.2, {1.1, 3.0, 0.0, 2.0}));
  EXPECT_LE(std::abs(p.achieved - 1.2), 1e-10 * 1.2);
  EXPECT_LE(std::abs(zeta_abs_direct(2.0 * p.s) - 1.2), 1e-10 * 1.2);
}

TEST(FindLocus, ContinuationStrategy) {
  LocusRequest q = request(FunctionTag::zeta(), 2, 1.2, {1.1, 3.0, 0.0, 2.0});
  q.strategy = LocusStrategy::Continuation;
  const LocusPoint p = find_locus_point(q);
  EXPECT_TRUE(validates(p));
  EXPECT_EQ(p.search_id.rfind("continuation", 0), 0u);
}

TEST(FindLocus, Deterministic) {
  const LocusRequest q = request(FunctionTag::jacobi_cn(0.5), 3, 0.6, {0.0, 0.6, 0.0, 0.5});
  const LocusPoint a = find_locus_point(q);
  const LocusPoint b = find_locus_point(q);
  EXPECT_EQ(a.s, b.s);
  EXPECT_EQ(a.search_id, b.search_id);
}

TEST(FindLocus, Errors) {
  EXPECT_THROW(find_locus_point(request(FunctionTag::zeta(), 1, 1.5, {0.5, 1.5, -0.5, 0.5})), PoleError);
  EXPECT_THROW(find_locus_point(request(FunctionTag::gamma(), 1, 1.0, {-0.5, 0.5, 0.0, 0.0})), PoleError);
  EXPECT_THROW(find_locus_point(request(FunctionTag::zeta(), 1, -1.0, {2.0, 3.0, 0.0, 1.0})), DomainError);
  EXPECT_THROW(find_locus_point(request(FunctionTag::zeta(), 1, 50.0, {3.0, 4.0, 0.0, 1.0})),
               LocusNotFoundError);
}

TEST(FindLocus, MultiplierRescaling) {
  const LocusPoint p = find_locus_point(request(FunctionTag::gamma(), 2, 0.7, {0.1, 3.0, 0.0, 2.0}));
  for (int m : {1, 3, 5}) {
    LocusPoint q = p;
    q.n = m;
    q.s = p.s * (2.0 / m);
    EXPECT_TRUE(validates(q)) << m;
  }
}

TEST(TraceLocus, ContractAndClosure) {
  const LocusPoint start = find_locus_point(request(FunctionTag::gamma(), 1, 1.0, {0.5, 1.5, 0.0, 0.5}));
  const double step = 0.05;
  const LocusTrace t = trace_locus(start, 400, step);
  ASSERT_EQ(t.points.size(), 401u);
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    EXPECT_TRUE(validates(t.points[i])) << i;
    if (i > 0) {
      EXPECT_LE(std::abs(t.points[i].s - t.points[i - 1].s), 2.0 * step);
    }
  }
  ASSERT_TRUE(t.closed_at.has_value());
  EXPECT_LT(*t.closed_at, 400);
  EXPECT_LE(std::abs(t.points[*t.closed_at].s - start.s), step);
}

TEST(TraceLocus, RejectsLongSteps) {
  const LocusPoint start = find_locus_point(request(FunctionTag::gamma(), 1, 1.0, {0.5, 1.5, 0.0, 0.5}));
  EXPECT_THROW(trace_locus(start, 10, 0.2), DomainError);
}

TEST(Family, SimpleAndCyclicRows) {
  const HybridConstants& h = constants();
  const auto targets = h.targets();
  for (Scheme sc : {Scheme::Simple, Scheme::Cyclic}) {
    for (int row = 1; row <= 8; ++row) {
      const auto fam = build_locus_family(h, sc, row);
      for (std::size_t l = 0; l < 4; ++l) {
        EXPECT_TRUE(validates(fam[l]));
        EXPECT_EQ(fam[l].target_c, targets[l]);
        EXPECT_EQ(fam[l].n, row);
        EXPECT_GT(fam[l].achieved, 0.0);
      }
    }
  }
  const auto s1 = build_locus_family(h, Scheme::Simple, 1);
  const auto c1 = build_locus_family(h, Scheme::Cyclic, 1);
  for (std::size_t l = 0; l < 4; ++l) {
    EXPECT_EQ(s1[l].s, c1[l].s);
    EXPECT_EQ(s1[l].tag.kind, c1[l].tag.kind);
  }
  const auto c4 = build_locus_family(h, Scheme::Cyclic, 4);
  EXPECT_EQ(c4[0].tag.kind, FunctionKind::BesselJ);
  EXPECT_EQ(c4[3].tag.kind, FunctionKind::JacobiCn);
  const auto c2 = build_locus_family(h, Scheme::Cyclic, 2);
  EXPECT_EQ(c2[0].tag.kind, FunctionKind::Gamma);
  EXPECT_EQ(c2[3].tag.kind, FunctionKind::Zeta);
}

TEST(Family, FailureNamesSlot) {
  HybridConstants h = constants();
  h.c1 = 1e9;  // |zeta| never reaches this inside the default regions
  try {
    build_locus_family(h, Scheme::Simple, 2);
    FAIL() << "expected LocusNotFoundError";
  } catch (const LocusNotFoundError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2, slot 1"), std::string::npos);
  }
}
