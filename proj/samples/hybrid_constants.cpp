// Mean-value points and constants at a few L, with the hybrid residual.

#include <cstdio>

#include "metafun/hybrid.hpp"

int main() {
  using namespace metafun;
  const LadderModel model(LadderModel::options_for(500));
  std::printf("%5s %6s %14s %14s %10s %10s %10s %10s %10s %10s\n", "L", "U", "rev.a", "beta1", "c1", "c2",
              "c3", "c4", "lambda", "res/c4");
  for (int L : {30, 100, 500}) {
    for (double U : {0.3, 1.0}) {
      const HybridConstants h = compute_hybrid_constants(L, U, model);
      std::printf("%5d %6.2f %14.6f %14.6f %10.6f %10.6f %10.6f %10.6f %10.6f %10.2e\n", L, U, h.rev_seg.a,
                  h.beta1, h.c1, h.c2, h.c3, h.c4, h.lambda, h.residual / h.c4);
    }
  }
}
