// K(m, n) against K(n, m) on a small grid, and the value both share.

#include <cstdio>

#include "metafun/crossbreed.hpp"

int main() {
  using namespace metafun;
  const LadderModel model(LadderModel::options_for(50));
  const HybridConstants h = compute_hybrid_constants(50, 1.0, model);
  LociCache simple(h, Scheme::Simple);
  std::vector<std::pair<int, int>> grid;
  for (int m = 1; m <= 4; ++m) {
    for (int n = m + 1; n <= 5; ++n) grid.emplace_back(m, n);
  }
  const SymmetryReport rep = check_symmetry(SymmetryKind::K, grid, simple);
  for (const SymmetryEntry& e : rep.entries) {
    std::printf("K(%d,%d) = %.15f  K(%d,%d) = %.15f  dev %.1e%s\n", e.a, e.b, e.forward, e.b, e.a, e.backward,
                e.deviation, e.structural ? "" : "  (shapes differ)");
  }
  std::printf("c1 c2 c3 + c4 c3 = %.15f\n", h.c1 * h.c2 * h.c3 + h.c4 * h.c3);
}
