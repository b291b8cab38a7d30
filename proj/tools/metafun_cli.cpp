// metafun: command-line front end.
//
//   metafun hybrid   [--L --U --omega]               mean-value points and constants
//   metafun levelset [--scheme --m --k2 --p --trace] level-curve points per row
//   metafun generate [--scheme --m --n --cells]      crossbred equations
//   metafun verify FILE                              re-check a saved artifact
//   metafun ladder   [--Ls]                          distance diagnostics
//
// Exit codes: 0 ok, 1 verification failure or other error, 2 degenerate
// constants, 3 level-curve point not found, 4 invalid configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "metafun/metafun.hpp"

namespace {

using namespace metafun;

enum Exit : int { kOk = 0, kFailed = 1, kDegenerate = 2, kNotFound = 3, kBadConfig = 4 };

// Flags that map one-to-one onto RunConfig settings, in application order.
const char* const kSettingFlags[] = {"L",  "U",     "omega", "k2",   "p",      "scheme", "m", "n",
                                     "cells", "tol", "format", "out", "jobs", "trace"};

struct Flags {
  std::map<std::string, std::string> values;
  std::string config_path;
  std::string ladder_Ls;
  std::string verify_path;
};

void add_setting_flags(CLI::App* cmd, Flags& flags) {
  for (const char* key : kSettingFlags) {
    cmd->add_option(std::string("--") + key, flags.values[key]);
  }
  cmd->add_option("--config", flags.config_path, "key=value file; flags override it");
}

RunConfig resolve(const CLI::App* cmd, const Flags& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) load_config_file(cfg, flags.config_path);
  for (const char* key : kSettingFlags) {
    if (cmd->count(std::string("--") + key) > 0) apply_setting(cfg, key, flags.values.at(key));
  }
  if (cmd->get_name() == "ladder" && cmd->count("--Ls") > 0) apply_setting(cfg, "ladder-L", flags.ladder_Ls);
  cfg.validate();
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + cfg.out);
  f << text;
}

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

int cmd_hybrid(const RunConfig& cfg) {
  const LadderModel model = make_model(cfg.L, cfg.omega);
  const HybridConstants h = compute_hybrid_constants(cfg.L, cfg.U, model);
  const double fresh = verify_mother(h, model);
  std::ostringstream os;
  if (cfg.format == "json") {
    io::json j;
    j["config"] = config_json(cfg);
    j["hybrid"] = io::hybrid_json(h);
    j["fresh_residual"] = fresh;
    os << dump(j);
  } else if (cfg.format == "csv") {
    os << "L,U,rev_a,rev_b,alpha0_1,alpha0_2,alpha1_1,alpha1_2,beta1,c1,c2,c3,c4,lambda,residual\n";
    os << h.L << ',' << io::fmt(h.U) << ',' << io::fmt(h.rev_seg.a) << ',' << io::fmt(h.rev_seg.b) << ','
       << io::fmt(h.alpha0[0]) << ',' << io::fmt(h.alpha0[1]) << ',' << io::fmt(h.alpha1[0]) << ','
       << io::fmt(h.alpha1[1]) << ',' << io::fmt(h.beta1) << ',' << io::fmt(h.c1) << ',' << io::fmt(h.c2) << ','
       << io::fmt(h.c3) << ',' << io::fmt(h.c4) << ',' << io::fmt(h.lambda) << ',' << io::fmt(h.residual) << '\n';
  } else if (cfg.format == "latex") {
    os << "\\begin{equation*}\n" << io::fmt(h.c1) << "\\cdot " << io::fmt(h.c2) << " + " << io::fmt(h.lambda)
       << "\\cdot " << io::fmt(h.c3) << " = " << io::fmt(h.c4) << "\n\\end{equation*}\n";
  } else {
    os << "L         " << h.L << "\nU         " << io::fmt(h.U) << "\nomega     " << omega_name(cfg.omega)
       << "\nbase      [" << io::fmt(h.base_seg.a) << ", " << io::fmt(h.base_seg.b) << "]"
       << "\nrev       [" << io::fmt(h.rev_seg.a) << ", " << io::fmt(h.rev_seg.b) << "]"
       << "\nalpha0    " << io::fmt(h.alpha0[0]) << "  " << io::fmt(h.alpha0[1]) << "\nalpha1    "
       << io::fmt(h.alpha1[0]) << "  " << io::fmt(h.alpha1[1]) << "\nbeta1     " << io::fmt(h.beta1)
       << "\nc1..c4    " << io::fmt(h.c1) << "  " << io::fmt(h.c2) << "  " << io::fmt(h.c3) << "  "
       << io::fmt(h.c4) << "\nlambda    " << io::fmt(h.lambda) << "\nresidual  " << io::fmt(h.residual)
       << " (relative " << io::fmt(h.residual / h.c4) << ")\n";
  }
  emit(cfg, os.str());
  return h.residual <= cfg.tol * h.c4 ? kOk : kFailed;
}

int cmd_levelset(const RunConfig& cfg) {
  const LadderModel model = make_model(cfg.L, cfg.omega);
  const HybridConstants h = compute_hybrid_constants(cfg.L, cfg.U, model);
  std::vector<LocusPoint> rows;
  for (int row = cfg.m.lo; row <= cfg.m.hi; ++row) {
    const auto fam = build_locus_family(h, cfg.scheme, row, cfg.params());
    rows.insert(rows.end(), fam.begin(), fam.end());
  }
  std::vector<LocusPoint> out = rows;
  if (cfg.trace > 0) {
    out.clear();
    for (const LocusPoint& p : rows) {
      const LocusTrace t = trace_locus(p, cfg.trace - 1, 0.05);
      out.insert(out.end(), t.points.begin(), t.points.end());
    }
  }
  bool all_valid = true;
  for (const LocusPoint& p : out) all_valid = all_valid && validates(p);
  std::ostringstream os;
  if (cfg.format == "json") {
    io::json arr = io::json::array();
    for (const LocusPoint& p : out) arr.push_back(io::locus_json(p));
    os << dump(arr);
  } else {
    os << io::kLocusCsvHeader;
    for (const LocusPoint& p : out) os << io::locus_csv_row(p);
  }
  emit(cfg, os.str());
  return all_valid ? kOk : kFailed;
}

int cmd_generate(const RunConfig& cfg) {
  const GenerationRun run = run_generation(cfg);
  std::ostringstream os;
  if (cfg.format == "json") {
    os << dump(run.artifact);
  } else if (cfg.format == "csv") {
    os << io::kResidualCsvHeader;
    for (const MetaEquation& m : run.family.equations) os << io::residual_csv_row(m);
  } else if (cfg.format == "latex") {
    for (const MetaEquation& m : run.family.equations) os << io::latex_meta(m) << '\n';
  } else {
    for (const MetaEquation& m : run.family.equations) {
      os << "(" << m.row_a << ")x(" << m.row_b << ")  residual " << io::fmt(m.residual)
         << (m.residual <= cfg.tol ? "  ok" : "  FAIL") << '\n';
    }
    for (const PairFailure& f : run.family.failures) {
      os << "(" << f.row_a << ")x(" << f.row_b << ")  failed: " << f.message << '\n';
    }
    for (const DisplayDiff& d : run.display_diff) {
      os << "displayed form (" << d.row_a << ")x(" << d.row_b << ") " << d.side << " term " << d.term << ": "
         << (d.printed ? io::display_label(*d.printed) : "-") << " -> "
         << (d.generated ? io::display_label(*d.generated) : "-") << '\n';
    }
  }
  emit(cfg, os.str());
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& path, bool tol_given) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read artifact " + path);
  io::json doc;
  try {
    doc = io::json::parse(in);
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("artifact is not valid JSON: ") + e.what());
  }
  const VerifyReport rep = verify_artifact(doc, tol_given ? cfg.tol : 0.0);
  std::ostringstream os;
  if (cfg.format == "json") {
    io::json arr = io::json::array();
    for (const VerifyEntry& e : rep.entries) {
      io::json j{{"index", e.index},        {"parents", e.parents}, {"lhs_value", e.lhs},
                 {"rhs_value", e.rhs},      {"residual", e.residual}, {"stale_values", e.stale_values},
                 {"ok", e.ok}};
      if (!e.error.empty()) j["error"] = e.error;
      arr.push_back(j);
    }
    os << dump({{"all_ok", rep.all_ok()}, {"entries", arr}});
  } else {
    for (const VerifyEntry& e : rep.entries) {
      os << e.index << "  " << e.parents << "  residual " << io::fmt(e.residual);
      if (e.stale_values > 0) os << "  stale values " << e.stale_values;
      if (!e.error.empty()) os << "  error: " << e.error;
      os << (e.ok ? "  ok" : "  FAIL") << '\n';
    }
    os << (rep.all_ok() ? "all equations verified\n" : "verification FAILED\n");
  }
  emit(cfg, os.str());
  return rep.all_ok() ? kOk : kFailed;
}

int cmd_ladder(const RunConfig& cfg) {
  const int max_L = *std::max_element(cfg.ladder_L.begin(), cfg.ladder_L.end());
  const LadderModel model = make_model(max_L, cfg.omega);
  const auto rows = ladder_table(model, cfg.ladder_L, cfg.U);
  std::ostringstream os;
  if (cfg.format == "json") {
    io::json arr = io::json::array();
    for (const LadderRow& r : rows) {
      arr.push_back({{"L", r.L},       {"T", r.T},           {"T_rev", r.T_rev}, {"gap", r.gap},
                     {"rho", r.rho},   {"predicted", r.predicted}, {"ratio", r.ratio},
                     {"round_trip", r.round_trip}});
    }
    os << dump({{"omega", omega_name(cfg.omega)}, {"U", cfg.U}, {"rows", arr}});
  } else {
    const char sep = cfg.format == "csv" ? ',' : ' ';
    if (cfg.format == "csv") {
      os << "L,T,T_rev,gap,rho,predicted,ratio,round_trip\n";
    } else {
      os << "omega " << omega_name(cfg.omega) << ", U " << io::fmt(cfg.U) << "\n";
      os << "L T T_rev gap rho predicted ratio round_trip\n";
    }
    for (const LadderRow& r : rows) {
      os << r.L << sep << io::fmt(r.T) << sep << io::fmt(r.T_rev) << sep << io::fmt(r.gap) << sep
         << io::fmt(r.rho) << sep << io::fmt(r.predicted) << sep << io::fmt(r.ratio) << sep
         << io::fmt(r.round_trip) << '\n';
    }
  }
  emit(cfg, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossbred identities between |zeta|, |Gamma|, |cn| and |J_p| on level curves"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* hybrid = app.add_subcommand("hybrid", "mean-value points and constants of the hybrid formula");
  CLI::App* levelset = app.add_subcommand("levelset", "level-curve points for each row (CSV)");
  CLI::App* generate = app.add_subcommand("generate", "generate and verify crossbred equations");
  CLI::App* verify = app.add_subcommand("verify", "recompute every factor of a saved JSON artifact");
  CLI::App* ladder = app.add_subcommand("ladder", "reverse-iteration distance diagnostics");
  for (CLI::App* cmd : {hybrid, levelset, generate, verify, ladder}) add_setting_flags(cmd, flags);
  ladder->add_option("--Ls", flags.ladder_Ls, "comma-separated L values");
  verify->add_option("artifact", flags.verify_path, "JSON artifact written by generate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    const RunConfig cfg = resolve(cmd, flags);
    if (cmd == hybrid) return cmd_hybrid(cfg);
    if (cmd == levelset) return cmd_levelset(cfg);
    if (cmd == generate) return cmd_generate(cfg);
    if (cmd == verify) return cmd_verify(cfg, flags.verify_path, cmd->count("--tol") > 0);
    return cmd_ladder(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "metafun: invalid configuration: " << e.what() << '\n';
    return kBadConfig;
  } catch (const DegenerateConstantsError& e) {
    std::cerr << "metafun: " << e.what() << " (retry with a slightly different --U)\n";
    return kDegenerate;
  } catch (const LocusNotFoundError& e) {
    std::cerr << "metafun: " << e.what() << '\n';
    return kNotFound;
  } catch (const StepFailureError& e) {
    std::cerr << "metafun: " << e.what() << '\n';
    return kNotFound;
  } catch (const std::exception& e) {
    std::cerr << "metafun: " << e.what() << '\n';
    return kFailed;
  }
}
