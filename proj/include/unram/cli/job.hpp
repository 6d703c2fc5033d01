#pragma once

#include "unram/residues/residues.hpp"

#include "json.hpp"

#include <iosfwd>

namespace unram::cli {

enum class Task { Cohomology, B0, Nr, Nab, H3, Check, Report };
enum class Format { Text, Json };

const char* taskName(Task t);

struct JobConfig {
  std::string group;                       // group file path or catalog description
  std::vector<unsigned> degrees;           // empty: the task's default degrees
  std::optional<exactla::Scalar> modulus;  // default |G|
  bool stabilize = false;
  std::vector<Task> tasks;
  Format format = Format::Text;
  std::string cacheDir;  // empty disables the disk cache
  unsigned jobs = 1;
  bool emitGenerators = false;
  bool timings = true;
  std::string family = "both";  // nab: abelian, bicyclic or both
  std::uint64_t seed = 1;       // randomized Leibniz instances
  unsigned leibnizInstances = 24;
  cochain::Budget budget;
};

// A path to a group file, or a catalog description ("dihedral:8",
// "catalog dihedral:8", "directProduct(...)").
groups::GroupPtr loadGroup(const std::string& source);

struct JobResult {
  nlohmann::ordered_json report;
  residues::InvariantReport summary;
  bool checksPassed = true;
};

// Throws ParseError, BudgetExceeded, ConsistencyFailure and friends.
JobResult run(const JobConfig& config, std::ostream& warnings);

std::string renderText(const nlohmann::ordered_json& report);
std::string formatFactors(const std::vector<exactla::Scalar>& factors);

// Entry point of the command-line tool; returns the process exit code
// (0 success, 1 usage or parse error, 2 budget, 3 consistency failure).
int runCommandLine(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unram::cli
