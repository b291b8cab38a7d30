// The six identities obtained by crossing the rows of one cyclic cell,
// printed as LaTeX, followed by the displayed-form differences.

#include <cstdio>
#include <cstdlib>

#include "metafun/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace metafun;
  RunConfig cfg;
  cfg.scheme = Scheme::Cyclic;
  cfg.cells = {argc > 1 ? std::atoi(argv[1]) : 0};
  const GenerationRun run = run_generation(cfg);
  for (const MetaEquation& m : run.family.equations) {
    if (!m.internal()) continue;
    std::printf("%% residual %.3e\n%s\n", m.residual, io::latex_meta(m).c_str());
  }
  for (const DisplayDiff& d : run.display_diff) {
    std::printf("(%d)x(%d) %s term %d: %s -> %s\n", d.row_a, d.row_b, d.side.c_str(), d.term,
                d.printed ? io::display_label(*d.printed).c_str() : "-",
                d.generated ? io::display_label(*d.generated).c_str() : "-");
  }
}
