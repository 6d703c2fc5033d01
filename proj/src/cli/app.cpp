#include "unram/cli/job.hpp"
#include "unram/groups/catalog.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>

namespace unram::cli {

int runCommandLine(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unramified invariants of finite groups from their cohomology", "unram"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::vector<std::string> groupTokens;
  std::string format = "text", output;
  exactla::Scalar modulus = 0;
  bool noTimings = false;
  if (const char* env = std::getenv("UNRAM_CACHE_DIR")) cfg.cacheDir = env;

  const std::vector<std::tuple<Task, const char*>> commands = {
      {Task::Cohomology, "H^n(G, Z/m), or H^n(G, Q/Z) with --stabilize"},
      {Task::B0, "Bogomolov multiplier, by bicyclic restrictions and by residues"},
      {Task::Nr, "kernel of all residues (Z_G(s), s)"},
      {Task::Nab, "kernel of restrictions to abelian or bicyclic subgroups"},
      {Task::H3, "degree-3 unramified quotient NR^3 / (NR^3 ∩ H^3_p)"},
      {Task::Check, "refined-sequence and Leibniz consistency checks"},
      {Task::Report, "everything affordable for the group's order"},
  };
  for (const auto& [task, help] : commands) {
    auto* sc = app.add_subcommand(taskName(task), help);
    sc->add_option("group", groupTokens, "group file, or catalog description such as dihedral:8")
        ->required()
        ->expected(1, 2);
    sc->add_option("-n,--degree", cfg.degrees, "cohomological degrees")->delimiter(',');
    sc->add_option("-m,--modulus", modulus, "coefficient modulus (default |G|)")->check(CLI::Range(1u, 1u << 30));
    sc->add_flag("--stabilize", cfg.stabilize, "use Q/Z coefficients");
    sc->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    sc->add_option("--cache-dir", cfg.cacheDir, "cache directory (default $UNRAM_CACHE_DIR)");
    sc->add_flag("--emit-generators", cfg.emitGenerators, "include generator cocycles in the report");
    sc->add_option("-j,--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    sc->add_option("--family", cfg.family, "nab subgroup family")->check(CLI::IsMember({"abelian", "bicyclic", "both"}));
    sc->add_option("--seed", cfg.seed, "seed for randomized checks");
    sc->add_flag("--no-timings", noTimings, "omit timings (byte-identical reruns)");
    sc->add_option("-o,--output", output, "write the report to a file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  for (const auto& [task, help] : commands)
    if (name == taskName(task)) cfg.tasks.push_back(task);
  cfg.group = groupTokens.size() == 2 ? groupTokens[0] + " " + groupTokens[1] : groupTokens[0];
  if (modulus) cfg.modulus = modulus;
  cfg.format = format == "json" ? Format::Json : Format::Text;
  cfg.timings = !noTimings;

  try {
    JobResult r = run(cfg, err);
    const std::string text = cfg.format == Format::Json ? r.report.dump(2) + "\n" : renderText(r.report);
    if (output.empty()) {
      out << text;
    } else {
      std::ofstream f(output);
      f << text;
      if (!f) {
        err << "error: cannot write " << output << "\n";
        return 1;
      }
    }
    if (!r.checksPassed) {
      err << "error: a consistency check failed\n";
      return 3;
    }
    return 0;
  } catch (const groups::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const cochain::BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const residues::ConsistencyFailure& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace unram::cli
