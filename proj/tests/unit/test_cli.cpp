#include "doctest.h"

#include "unram/cli/cache.hpp"
#include "unram/cli/job.hpp"
#include "unram/groups/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace unram;
using namespace unram::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("unram_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "unram");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = runCommandLine(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json jsonOf(const Run& r) { return nlohmann::json::parse(r.out); }

std::string tableText(const groups::FiniteGroup& g) {
  std::string s = "group t\ntable\n";
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) s += std::to_string(g.mul(a, b)) + " ";
    s += "\n";
  }
  return s;
}

}  // namespace

TEST_CASE("cache keys") {
  TempDir dir;
  const fs::path file = dir.path / "d8.grp";
  std::ofstream(file) << "group D8\nperm (0 1 2 3)\nperm (0 2)\n";
  auto a = groups::loadGroupFile(file.string()), b = groups::loadGroupFile(file.string());
  CHECK(cacheKey(*a, 2, 8) == cacheKey(*b, 2, 8));
  CHECK(cacheKey(*a, 2, 8) != cacheKey(*a, 3, 8));
  CHECK(cacheKey(*a, 2, 8) != cacheKey(*a, 2, 4));

  auto c4 = groups::catalogFromString("cyclic:4");
  auto t4 = groups::parseGroupText(tableText(*c4));
  CHECK(cacheKey(*c4, 2, 4) == cacheKey(*t4, 2, 4));
  CHECK(cacheKey(*c4, 2, 4) != cacheKey(*groups::catalogFromString("cyclic:5"), 2, 4));
  CHECK(cacheKey(*c4, 2, 4).size() == 64);

  // relabeling changes the key (no canonicalization)
  std::vector<std::vector<groups::Elem>> t(4, std::vector<groups::Elem>(4));
  const std::vector<groups::Elem> perm = {0, 2, 1, 3};  // swap the labels of σ and σ²
  for (groups::Elem x = 0; x < 4; ++x)
    for (groups::Elem y = 0; y < 4; ++y) t[perm[x]][perm[y]] = perm[c4->mul(x, y)];
  auto relabeled = groups::FiniteGroup::fromMultTable(t);
  CHECK(relabeled->table() != c4->table());
  CHECK(cacheKey(*relabeled, 2, 4) != cacheKey(*c4, 2, 4));
}

TEST_CASE("documented command examples") {
  auto b0 = invoke({"b0", "catalog", "cyclic:6", "--format", "json"});
  CHECK(b0.code == 0);
  auto j = jsonOf(b0);
  CHECK(j["results"][0]["task"] == "b0");
  CHECK(j["results"][0]["invariantFactors"].empty());

  auto h = invoke({"cohomology", "--degree", "2", "--modulus", "4", "catalog", "cyclic:4", "--format", "json"});
  CHECK(h.code == 0);
  CHECK(jsonOf(h)["results"][0]["invariantFactors"] == nlohmann::json::array({4}));

  auto chk = invoke({"check", "dihedral:8", "--format", "json"});
  CHECK(chk.code == 0);
  const auto checks = jsonOf(chk)["checks"];
  int refined = 0;
  for (const auto& c : checks) {
    CHECK(c["passed"] == true);
    refined += c["name"] == "refined-sequence";
  }
  CHECK(refined == 2);
}

TEST_CASE("report schema and determinism") {
  const std::vector<std::string> args = {"report", "alternating:4", "--format", "json", "--no-timings"};
  auto a = invoke(args), b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = jsonOf(a);
  for (const char* key : {"group", "assumptions", "results", "checks"}) CHECK(j.contains(key));
  CHECK_FALSE(j.contains("timings"));
  CHECK(j["group"]["order"] == 12);
  CHECK(j["group"]["sha256"].get<std::string>().size() == 64);
  bool sawB0 = false, sawH3 = false;
  for (const auto& r : j["results"]) {
    sawB0 = sawB0 || r["task"] == "b0";
    sawH3 = sawH3 || r["task"] == "h3";
    // ascending divisor chains
    const auto f = r.contains("invariantFactors") ? r["invariantFactors"] : r["quotientInvariantFactors"];
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i].get<unsigned>() % f[i - 1].get<unsigned>() == 0);
  }
  CHECK(sawB0);
  CHECK(sawH3);

  auto timed = jsonOf(invoke({"b0", "alternating:4", "--format", "json"}));
  CHECK(timed.contains("timings"));
}

TEST_CASE("generators on request") {
  auto j = jsonOf(invoke({"cohomology", "cyclic:4", "-n", "2", "--emit-generators", "--format", "json"}));
  const auto gens = j["results"][0]["generators"];
  REQUIRE(gens.size() == 1);
  auto g = groups::catalogFromString("cyclic:4");
  cochain::Cochain c(g, 2, exactla::Modulus(4), gens[0].get<exactla::DenseVec>());
  CHECK(cochain::isCocycle(c));
  CHECK_FALSE(jsonOf(invoke({"cohomology", "cyclic:4", "--format", "json"}))["results"][0].contains("generators"));
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate", "cyclic:4"}).code == 1);
  CHECK(invoke({"b0", "nosuch:4"}).code == 1);
  CHECK(invoke({"cohomology", "--format", "yaml", "cyclic:4"}).code == 1);
  TempDir dir;
  const fs::path bad = dir.path / "bad.grp";
  std::ofstream(bad) << "group x\nperm (0 1\n";
  auto r = invoke({"b0", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
  auto big = invoke({"cohomology", "-n", "4", "symmetric:5"});
  CHECK(big.code == 2);
  CHECK(big.err.find("required") != std::string::npos);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("disk cache") {
  TempDir dir;
  const std::vector<std::string> args = {"report", "dihedral:8", "--format", "json", "--cache-dir", dir.path.string()};
  auto first = invoke(args);
  REQUIRE(first.code == 0);
  auto j1 = jsonOf(first);
  CHECK(j1["timings"]["cache"]["loaded"] == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    CHECK(e.path().extension() == ".sq");
    ++files;
  }
  CHECK(files > 0);

  auto second = invoke(args);
  auto j2 = jsonOf(second);
  CHECK(j2["timings"]["cache"]["loaded"].get<int>() > 0);
  CHECK(j2["results"] == j1["results"]);
  CHECK(j2["checks"] == j1["checks"]);

  SUBCASE("corrupt entries are recomputed with a warning") {
    for (const auto& e : fs::directory_iterator(dir.path)) {
      std::fstream f(e.path(), std::ios::in | std::ios::out | std::ios::binary);
      f.seekp(-1, std::ios::end);
      f.put('\x5a');
    }
    auto third = invoke(args);
    CHECK(third.code == 0);
    CHECK(third.err.find("corrupt cache entry") != std::string::npos);
    auto j3 = jsonOf(third);
    CHECK(j3["results"] == j1["results"]);
    CHECK(j3["timings"]["cache"]["corrupt"].get<int>() > 0);
  }
}

TEST_CASE("cached structures equal fresh ones") {
  TempDir dir;
  auto disk = std::make_shared<DiskCache>(dir.path);
  std::mt19937_64 rng(17);
  const std::vector<std::string> names = {"cyclic:6", "symmetric:3", "quaternion:8", "abelian:2,4", "dihedral:10"};
  for (int trial = 0; trial < 8; ++trial) {
    auto g = groups::catalogFromString(names[rng() % names.size()]);
    const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
    const exactla::Scalar m = 2 + static_cast<exactla::Scalar>(rng() % 11);
    cochain::CohomologyStore cached(cochain::Budget{}, disk), again(cochain::Budget{}, disk), fresh;
    auto a = cached.get(g, n, m);
    auto b = again.get(g, n, m);
    auto c = fresh.get(g, n, m);
    CHECK(again.loaded() == 1);
    CHECK(b->invariantFactors() == c->invariantFactors());
    CHECK(a->invariantFactors() == c->invariantFactors());
    // coordinates agree on the same cocycles
    for (const auto& z : c->generatorCocycles()) CHECK(b->coordinates(z) == c->coordinates(z));
  }
}

TEST_CASE("job configuration") {
  JobConfig cfg;
  cfg.group = "catalog symmetric:3";
  std::ostringstream warn;
  CHECK_THROWS_AS(run(cfg, warn), std::invalid_argument);
  cfg.tasks = {Task::Nr, Task::Nab};
  cfg.stabilize = true;
  auto r = run(cfg, warn);
  CHECK(r.checksPassed);
  REQUIRE(r.summary.degrees.size() == 1);
  CHECK(r.summary.degrees[0].degree == 2);
  CHECK(r.summary.degrees[0].nr.empty());
  CHECK(r.summary.consistent());
  CHECK(formatFactors({}) == "0");
  CHECK(formatFactors({2, 4}) == "Z/2 + Z/4");
}
