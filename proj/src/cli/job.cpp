#include "unram/cli/job.hpp"

#include "unram/cli/cache.hpp"
#include "unram/groups/catalog.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

namespace unram::cli {

using exactla::Scalar;
using groups::GroupPtr;
using json = nlohmann::ordered_json;

const char* taskName(Task t) {
  switch (t) {
    case Task::Cohomology: return "cohomology";
    case Task::B0: return "b0";
    case Task::Nr: return "nr";
    case Task::Nab: return "nab";
    case Task::H3: return "h3";
    case Task::Check: return "check";
    case Task::Report: return "report";
  }
  return "?";
}

GroupPtr loadGroup(const std::string& source) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) return groups::loadGroupFile(source);
  std::string_view s = source;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  if (s.starts_with("catalog ")) s.remove_prefix(8);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return groups::catalogFromString(s);
}

std::string formatFactors(const std::vector<Scalar>& factors) {
  if (factors.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? " + Z/" : "Z/") + std::to_string(factors[i]);
  return out;
}

namespace {

const std::vector<std::string>& assumptionList() {
  static const std::vector<std::string> list = {
      "base field algebraically closed of characteristic 0: Tate twists and the symbol {-1} are trivial",
      std::string("residue sign convention ") + residues::kResidueSignConvention + ", Leibniz sign " +
          residues::kLeibnizSign,
      "residue index set: pairs (Z_G(s), s) for every s in G, no deduplication by <s>",
      "Q/Z coefficients computed by stabilization of Z/m coefficients, m a multiple of exp(G)",
      "permutation-negligible classes: corestrictions of x ∪ β(y), β the Bockstein of 0 → Z/m → Z/m² → Z/m → 0",
      "H^3_nr / H^3_p equals the unramified H^3 only after inverting 2",
      "degree-3 refined check uses the abelian-restriction kernel modulo Chern products χ ∪ β(ψ)",
  };
  return list;
}

class Runner {
 public:
  Runner(const JobConfig& cfg, std::ostream& warnings) : cfg_(cfg), store_(cfg.budget) {
    g_ = loadGroup(cfg.group);
    n_ = g_->order();
    m_ = cfg.modulus ? *cfg.modulus : static_cast<Scalar>(n_);
    if (!cfg.cacheDir.empty()) {
      disk_ = std::make_shared<DiskCache>(cfg.cacheDir, &warnings);
      store_.setBackend(disk_);
    }
    const std::string hash = sha256Hex(g_->canonicalBytes());
    report_["group"] = {{"name", g_->name()},
                        {"order", n_},
                        {"exponent", g_->exponent()},
                        {"abelian", g_->isAbelian()},
                        {"sha256", hash}};
    report_["assumptions"] = assumptionList();
    report_["results"] = json::array();
    report_["checks"] = json::array();
    summary_.group = g_->name();
    summary_.hash = hash;
    summary_.modulus = m_;
    summary_.stabilized = cfg.stabilize;
    summary_.assumptions = assumptionList();
  }

  JobResult finish() {
    for (auto& [n, e] : entries_) summary_.degrees.push_back(e);
    const bool ok = summary_.consistent();
    addCheck({{"name", "report-invariants"}, {"passed", ok}});
    if (cfg_.timings) {
      json t = json::object();
      for (const auto& [k, v] : summary_.timings) t[k] = v;
      t["cache"] = {{"computed", store_.computed()},
                    {"loaded", store_.loaded()},
                    {"corrupt", disk_ ? disk_->corruptSeen() : 0}};
      report_["timings"] = t;
    }
    return {report_, summary_, passed_};
  }

  void runTask(Task t) {
    const auto start = std::chrono::steady_clock::now();
    switch (t) {
      case Task::Cohomology: cohomology(degreesOr({1, 2}), cfg_.stabilize); break;
      case Task::Nr: nr(degreesOr({2}), cfg_.stabilize); break;
      case Task::Nab: nab(degreesOr({2}), cfg_.stabilize); break;
      case Task::B0: b0(); break;
      case Task::H3: h3(); break;
      case Task::Check: check(cfg_.degrees.empty() ? affordable({2, 3}) : cfg_.degrees); break;
      case Task::Report: everything(); break;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    summary_.timings.emplace_back(taskName(t), secs);
  }

 private:
  std::vector<unsigned> degreesOr(std::vector<unsigned> d) const { return cfg_.degrees.empty() ? d : cfg_.degrees; }

  bool fits(unsigned n) const {
    return cochain::cochainDim(n_, n) <= cfg_.budget.maxUnknowns &&
           cochain::cochainDim(n_, n + 1) <= cfg_.budget.maxEquations;
  }
  std::vector<unsigned> affordable(std::vector<unsigned> d) const {
    std::erase_if(d, [&](unsigned n) { return !fits(n); });
    return d;
  }

  Scalar stableModulus() const {
    if (m_ % g_->exponent())
      throw std::invalid_argument("Q/Z coefficients need a modulus divisible by exp(G) = " +
                                  std::to_string(g_->exponent()));
    return m_;
  }

  residues::DegreeEntry& entry(unsigned n) {
    auto& e = entries_[n];
    e.degree = n;
    return e;
  }

  void addResult(json r) { report_["results"].push_back(std::move(r)); }
  void addCheck(json c) {
    if (c.contains("passed") && c["passed"].is_boolean() && !c["passed"].get<bool>()) passed_ = false;
    report_["checks"].push_back(std::move(c));
  }

  void cohomology(const std::vector<unsigned>& degrees, bool stabilized) {
    for (unsigned n : degrees) {
      json r = {{"task", "cohomology"}, {"degree", n}};
      cochain::CohomologyPtr base;
      std::vector<Scalar> factors;
      std::uint64_t order;
      if (stabilized) {
        auto s = store_.stabilized(g_, n, stableModulus());
        base = s->base();
        factors = s->invariantFactors();
        order = s->order();
      } else {
        base = store_.get(g_, n, m_);
        factors = base->invariantFactors();
        order = base->order();
      }
      r["modulus"] = m_;
      r["coefficients"] = stabilized ? std::string("Q/Z") : "Z/" + std::to_string(m_);
      r["invariantFactors"] = factors;
      r["order"] = order;
      if (cfg_.emitGenerators) {
        json gens = json::array();
        for (const auto& c : base->generatorCocycles()) gens.push_back(c.values());
        r["generatorsOf"] = "H^" + std::to_string(n) + "(G, Z/" + std::to_string(m_) + ")";
        r["generators"] = std::move(gens);
      }
      addResult(std::move(r));
      auto& e = entry(n);
      e.cohomology = factors;
      e.ambientOrder = order;
    }
  }

  residues::KernelOptions options(bool stabilized) const { return {stabilized, cfg_.jobs, false}; }

  json kernelResult(const char* task, unsigned n, bool stabilized, const residues::SubgroupOf& k) {
    json r = {{"task", task},
              {"degree", n},
              {"modulus", m_},
              {"coefficients", stabilized ? std::string("Q/Z") : "Z/" + std::to_string(m_)},
              {"invariantFactors", k.invariantFactors()},
              {"ambientInvariantFactors", k.ambient().invariantFactors()}};
    auto& e = entry(n);
    e.ambientOrder = k.ambient().order();
    return r;
  }

  void nr(const std::vector<unsigned>& degrees, bool stabilized) {
    for (unsigned n : degrees) {
      auto k = residues::nrKernel(store_, g_, n, stabilized ? stableModulus() : m_, options(stabilized));
      addResult(kernelResult("nr", n, stabilized, k));
      entry(n).nr = k.invariantFactors();
    }
  }

  void nab(const std::vector<unsigned>& degrees, bool stabilized) {
    std::vector<residues::Family> fams;
    if (cfg_.family == "abelian" || cfg_.family == "both") fams.push_back(residues::Family::Abelian);
    if (cfg_.family == "bicyclic" || cfg_.family == "both") fams.push_back(residues::Family::Bicyclic);
    if (fams.empty()) throw std::invalid_argument("unknown subgroup family '" + cfg_.family + "'");
    for (unsigned n : degrees)
      for (auto f : fams) {
        auto k = residues::nabKernel(store_, g_, n, stabilized ? stableModulus() : m_, f, options(stabilized));
        json r = kernelResult("nab", n, stabilized, k);
        r["family"] = residues::familyName(f);
        addResult(std::move(r));
        (f == residues::Family::Abelian ? entry(n).nabAbelian : entry(n).nabBicyclic) = k.invariantFactors();
      }
  }

  void b0() {
    auto b = residues::bogomolovMultiplier(store_, g_, cfg_.jobs);
    const auto h2 = b.bicyclic.ambient();
    addResult({{"task", "b0"},
               {"modulus", n_},
               {"invariantFactors", b.invariantFactors()},
               {"h2InvariantFactors", h2.invariantFactors()}});
    addCheck({{"name", "b0-paths-agree"}, {"passed", b.bicyclic == b.residue}});
    summary_.b0 = b.invariantFactors();
    summary_.h2Order = h2.order();
  }

  void h3() {
    auto r = residues::h3NrQuotient(store_, g_, cfg_.jobs);
    addResult({{"task", "h3"},
               {"modulus", n_},
               {"nrInvariantFactors", r.nr.invariantFactors()},
               {"negligibleInvariantFactors", r.negligible.invariantFactors()},
               {"quotientInvariantFactors", r.quotient},
               {"ambientInvariantFactors", r.nr.ambient().invariantFactors()},
               {"note", "equals the unramified H^3 only after inverting 2"}});
    summary_.h3p = r.negligible.invariantFactors();
    summary_.h3nrQuotient = r.quotient;
  }

  void check(const std::vector<unsigned>& degrees) {
    for (unsigned n : degrees) {
      auto c = residues::refinedSequenceCheck(store_, g_, n, m_, cfg_.jobs);
      json failed = json::array();
      for (const auto& p : c.residues)
        if (!p.passed) failed.push_back(p.element);
      addCheck({{"name", "refined-sequence"},
                {"degree", n},
                {"modulus", c.modulus},
                {"nabVariant", c.nabVariant},
                {"nrInsideNab", c.nrInsideNab},
                {"pairs", c.residues.size()},
                {"failedPairs", failed},
                {"passed", c.passed()}});
    }
    leibniz();
  }

  void leibniz() {
    std::vector<std::pair<unsigned, unsigned>> shapes;
    for (auto pq : {std::pair{1u, 1u}, {1u, 2u}, {2u, 1u}})
      if (fits(pq.first + pq.second)) shapes.push_back(pq);
    if (shapes.empty() || n_ == 1) {
      addCheck({{"name", "leibniz"}, {"status", "skipped"}});
      return;
    }
    std::mt19937_64 rng(cfg_.seed);
    unsigned failures = 0;
    auto randomClass = [&](unsigned d) {
      auto h = store_.get(g_, d, m_);
      std::vector<std::int64_t> c(h->rank());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::int64_t>(rng() % h->invariantFactors()[i]);
      return h->element(c);
    };
    for (unsigned i = 0; i < cfg_.leibnizInstances; ++i) {
      const auto [p, q] = shapes[i % shapes.size()];
      const auto x = randomClass(p), y = randomClass(q);
      const groups::Elem s = static_cast<groups::Elem>(rng() % n_);
      const groups::ResiduePair pair{groups::centralizer(g_, s), s, g_->elementOrder(s)};
      failures += !residues::residueCupCheck(pair, x, y, store_);
    }
    addCheck({{"name", "leibniz"},
              {"instances", cfg_.leibnizInstances},
              {"sign", residues::kLeibnizSign},
              {"failures", failures},
              {"passed", failures == 0}});
  }

  void everything() {
    stableModulus();  // rejects a modulus that does not absorb exp(G)
    summary_.stabilized = true;
    const auto degs = affordable({1, 2, 3});
    cohomology(degs, true);
    nr(degs, true);
    nab(degs, true);
    if (fits(2)) b0();
    if (fits(3)) h3();
    check(affordable({2, 3}));
  }

  const JobConfig& cfg_;
  cochain::CohomologyStore store_;
  std::shared_ptr<DiskCache> disk_;
  GroupPtr g_;
  std::size_t n_ = 0;
  Scalar m_ = 0;
  json report_;
  residues::InvariantReport summary_;
  std::map<unsigned, residues::DegreeEntry> entries_;
  bool passed_ = true;
};

}  // namespace

JobResult run(const JobConfig& config, std::ostream& warnings) {
  if (config.tasks.empty()) throw std::invalid_argument("no task requested");
  Runner r(config, warnings);
  for (Task t : config.tasks) r.runTask(t);
  return r.finish();
}

std::string renderText(const json& report) {
  std::ostringstream out;
  const auto& g = report["group"];
  out << "group " << (g["name"].get<std::string>().empty() ? "<unnamed>" : g["name"].get<std::string>())
      << "  order " << g["order"] << "  sha256 " << g["sha256"].get<std::string>().substr(0, 16) << "\n";
  auto factors = [](const json& j) { return formatFactors(j.get<std::vector<Scalar>>()); };
  for (const auto& r : report["results"]) {
    const std::string task = r["task"];
    const std::string deg = r.contains("degree") ? std::to_string(r["degree"].get<unsigned>()) : "";
    const std::string coeff = r.contains("coefficients") ? r["coefficients"].get<std::string>() : "";
    if (task == "cohomology") {
      out << "H^" << deg << "(G, " << coeff << ") = " << factors(r["invariantFactors"]) << "\n";
    } else if (task == "nr") {
      out << "NR^" << deg << "(G, " << coeff << ") = " << factors(r["invariantFactors"]) << "  inside "
          << factors(r["ambientInvariantFactors"]) << "\n";
    } else if (task == "nab") {
      out << "nab^" << deg << "(G, " << coeff << ") [" << r["family"].get<std::string>()
          << "] = " << factors(r["invariantFactors"]) << "\n";
    } else if (task == "b0") {
      out << "B0(G) = " << factors(r["invariantFactors"]) << "  inside H^2(G, Q/Z) = "
          << factors(r["h2InvariantFactors"]) << "\n";
    } else if (task == "h3") {
      out << "H^3_NR / H^3_p = " << factors(r["quotientInvariantFactors"]) << "  (NR^3 = "
          << factors(r["nrInvariantFactors"]) << ", H^3_p = " << factors(r["negligibleInvariantFactors"]) << ")\n";
    }
  }
  for (const auto& c : report["checks"]) {
    out << "check " << c["name"].get<std::string>();
    if (c.contains("degree")) out << " degree " << c["degree"];
    if (c.contains("passed"))
      out << ": " << (c["passed"].get<bool>() ? "pass" : "FAIL");
    else
      out << ": skipped";
    if (c.contains("failedPairs") && !c["failedPairs"].empty()) out << "  failing s = " << c["failedPairs"].dump();
    out << "\n";
  }
  for (const auto& a : report["assumptions"]) out << "assuming " << a.get<std::string>() << "\n";
  if (report.contains("timings"))
    for (const auto& [k, v] : report["timings"].items())
      if (v.is_number()) out << "time " << k << " " << v.get<double>() << " s\n";
  return out.str();
}

}  // namespace unram::cli
