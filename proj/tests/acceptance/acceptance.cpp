// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include "support/oracle.hpp"
#include "unram/cochain/maps.hpp"
#include "unram/cochain/stabilize.hpp"
#include "unram/groups/catalog.hpp"
#include "unram/residues/residues.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

using namespace unram;
using cochain::CohClass;
using cochain::CohomologyStore;
using exactla::Scalar;
using groups::GroupPtr;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first few mismatches; every case is still evaluated.
class Tally {
 public:
  void expect(bool cond, const std::string& what) {
    ++cases_;
    if (cond) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& label) const {
    std::ostringstream s;
    s << cases_ << " " << label;
    if (failures_) s << ", " << failures_ << " failed: " << notes_;
    return {failures_ == 0, s.str()};
  }

 private:
  std::size_t cases_ = 0, failures_ = 0;
  std::string notes_;
};

std::string str(const std::vector<Scalar>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::vector<GroupPtr> catalog(std::uint32_t maxOrder, const std::function<bool(const groups::FiniteGroup&)>& keep = {}) {
  std::vector<GroupPtr> out;
  for (const auto& name : groups::catalogUpTo(maxOrder)) {
    auto g = groups::catalogFromString(name);
    if (!keep || keep(*g)) out.push_back(g);
  }
  return out;
}

std::string label(const GroupPtr& g) { return g->name().empty() ? "order " + std::to_string(g->order()) : g->name(); }

CohClass randomClass(const cochain::CohomologyPtr& h, std::mt19937_64& rng) {
  std::vector<std::int64_t> c(h->rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::int64_t>(rng() % h->invariantFactors()[i]);
  return h->element(c);
}

std::uint64_t abelianizationOrder(const GroupPtr& g) {
  std::vector<groups::Elem> comms;
  for (groups::Elem a = 0; a < g->order(); ++a)
    for (groups::Elem b = 0; b < g->order(); ++b)
      comms.push_back(g->mul(g->mul(g->inverse(a), g->inverse(b)), g->mul(a, b)));
  return g->order() / groups::Subgroup::generatedBy(g, comms).order();
}

// ---------------------------------------------------------------- criteria

Outcome ac1() {
  Tally t;
  for (Scalar q = 2; q <= 12; ++q) {
    CohomologyStore store;
    auto g = groups::cyclic(q);
    for (Scalar m = 2; m <= 12; ++m)
      for (unsigned n = 1; n <= 4; ++n) {
        const Scalar d = std::gcd(q, m);
        const std::vector<Scalar> want = d == 1 ? std::vector<Scalar>{} : std::vector<Scalar>{d};
        const auto got = store.get(g, n, m)->invariantFactors();
        t.expect(got == want, "H^" + std::to_string(n) + "(Z/" + std::to_string(q) + ", Z/" + std::to_string(m) +
                                  ") = " + str(got));
      }
  }
  return t.outcome("cyclic groups checked");
}

Outcome ac2() {
  Tally t;
  CohomologyStore store;
  for (Scalar q = 2; q <= 12; ++q) {
    auto g = groups::cyclic(q);
    t.expect(store.stabilized(g, 2, q)->order() == 1, "H^2(Z/" + std::to_string(q) + ", Q/Z) nonzero");
  }
  for (const auto& g : catalog(24)) {
    if (g->order() == 1) continue;
    const auto h1 = store.stabilized(g, 1, static_cast<Scalar>(g->order()))->order();
    t.expect(h1 == abelianizationOrder(g), label(g) + ": |H^1| = " + std::to_string(h1));
  }
  return t.outcome("groups checked");
}

Outcome ac3() {
  Tally t;
  CohomologyStore store;
  const auto rows = oracle::rows();
  for (const char* name : {"Z2xZ2", "Z3xZ3", "Z4xZ4", "Q8", "D8", "A4", "S4"}) {
    auto g = groups::catalogFromString(oracle::catalogNames().at(name));
    const auto want = oracle::order(rows.at(name).schur);
    const auto got = store.stabilized(g, 2, static_cast<Scalar>(g->order()))->order();
    t.expect(got == want, std::string(name) + ": " + std::to_string(got) + " vs " + std::to_string(want));
  }
  return t.outcome("Schur multipliers match the oracle");
}

Outcome ac4() {
  Tally t;
  t.expect(oracle::nontrivialB0UpTo32() == 0, "oracle reports nontrivial B0 below 33");
  CohomologyStore store;
  auto groupsToCheck = catalog(32);
  groupsToCheck.push_back(groups::symmetric(4));
  groupsToCheck.push_back(groups::alternating(4));
  for (const auto& g : groupsToCheck) {
    try {
      auto b = residues::bogomolovMultiplier(store, g);
      t.expect(b.invariantFactors().empty(), label(g) + ": B0 = " + str(b.invariantFactors()));
    } catch (const residues::ConsistencyFailure& e) {
      t.expect(false, label(g) + ": " + e.what());
    }
  }
  return t.outcome("groups with trivial B0 and agreeing residue/bicyclic paths");
}

Outcome ac5() {
  Tally t;
  CohomologyStore store;
  auto g = groups::loadGroupFile(UNRAM_WITNESS_FILE);
  t.expect(g->order() == 64, "witness has order " + std::to_string(g->order()));
  t.expect(oracle::witnessB0Order() == 2, "oracle witness value");
  try {
    auto b = residues::bogomolovMultiplier(store, g);
    t.expect(b.invariantFactors() == std::vector<Scalar>{2}, "B0 = " + str(b.invariantFactors()));
  } catch (const residues::ConsistencyFailure& e) {
    t.expect(false, e.what());
  }
  return t.outcome("witness facts (B0 = Z/2)");
}

Outcome ac6() {
  Tally t;
  CohomologyStore store;
  std::mt19937_64 rng(2024);
  const auto pool = catalog(16, [](const groups::FiniteGroup& g) { return g.order() > 1; });
  for (int trial = 0; trial < 100; ++trial) {
    const auto& g = pool[rng() % pool.size()];
    const auto subs = groups::allSubgroups(g);
    const auto& h = subs[rng() % subs.size()];
    const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
    const Scalar m = static_cast<Scalar>(g->order());
    const CohClass x = randomClass(store.get(g, n, m), rng);
    const std::int64_t index = static_cast<std::int64_t>(g->order() / h.order());
    const CohClass back = cochain::transfer(h, cochain::restriction(h, x, store), store);
    t.expect(back == x.scaled(index), label(g) + " degree " + std::to_string(n) + ": Cor Res != index");
    t.expect(x.scaled(static_cast<std::int64_t>(g->order())).isZero(), label(g) + ": |G| x != 0");
  }
  return t.outcome("transfer and annihilation cases");
}

Outcome ac7() {
  Tally t;
  CohomologyStore store;
  std::vector<GroupPtr> list = {groups::cyclic(2)};
  for (const auto& g : catalog(27, [](const groups::FiniteGroup& g) {
         return g.order() > 1 && ((g.isAbelian() && g.order() <= 9) || g.order() % 2 == 1);
       }))
    list.push_back(g);
  for (const auto& g : list) {
    auto r = residues::h3NrQuotient(store, g);
    t.expect(r.quotient.empty(), label(g) + ": H3_NR/H3_p = " + str(r.quotient));
  }
  return t.outcome("groups with H3_NR / H3_p = 0");
}

Outcome ac8() {
  Tally t;
  CohomologyStore store;
  std::mt19937_64 rng(8);
  const std::vector<std::string> names = {"cyclic:4", "abelian:2,2", "symmetric:3", "dihedral:8", "quaternion:8"};
  for (int trial = 0; trial < 120; ++trial) {
    auto g = groups::catalogFromString(names[trial % names.size()]);
    const Scalar m = static_cast<Scalar>(g->order());
    const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
    auto h = store.get(g, n, m);
    const groups::Elem s = static_cast<groups::Elem>(rng() % g->order());
    const groups::ResiduePair pair{groups::centralizer(g, s), s, g->elementOrder(s)};
    const CohClass x = randomClass(h, rng), y = randomClass(h, rng);
    const CohClass rx = residues::residue(x, pair, store);
    const std::string where = names[trial % names.size()] + " n=" + std::to_string(n);

    // coboundary shift
    exactla::DenseVec v(cochain::cochainDim(g->order(), n - 1));
    for (auto& e : v) e = static_cast<Scalar>(rng() % m);
    const auto shifted = x.rep + cochain::coboundary(cochain::Cochain(g, n - 1, h->modulus(), v));
    t.expect(residues::residue(h->classOf(shifted), pair, store) == rx, where + ": coboundary");
    t.expect(rx.scaled(pair.torsionOrder).isZero(), where + ": q-torsion");
    const std::int64_t k = static_cast<std::int64_t>(rng() % m);
    t.expect(residues::residue(x.scaled(k) + y, pair, store) == rx.scaled(k) + residues::residue(y, pair, store),
             where + ": linearity");
    const groups::ResiduePair unit{groups::Subgroup::whole(g), g->identity(), 1};
    t.expect(residues::residue(x, unit, store).isZero(), where + ": identity pair");

    const unsigned p = 1 + static_cast<unsigned>(rng() % 2), q = p == 2 ? 1 : 1 + static_cast<unsigned>(rng() % 2);
    const CohClass a = randomClass(store.get(g, p, m), rng), b = randomClass(store.get(g, q, m), rng);
    t.expect(residues::residueCupCheck(pair, a, b, store), where + ": Leibniz");
  }
  return t.outcome("property checks over 120 instances");
}

Outcome ac9() {
  Tally t;
  CohomologyStore store;
  for (const auto& g : catalog(12, [](const groups::FiniteGroup& g) { return g.order() > 1; }))
    for (unsigned q : {2u, 3u}) {
      auto z = cochain::integralCohomology(g, q);
      const auto qz = store.stabilized(g, q - 1, static_cast<Scalar>(g->order()))->order();
      t.expect(z.freeRank == 0 && z.rankCertified && z.torsionOrder() == qz,
               label(g) + " q=" + std::to_string(q) + ": |H^q(Z)| = " + std::to_string(z.torsionOrder()) +
                   " vs " + std::to_string(qz));
    }
  return t.outcome("integral shift cases");
}

Outcome ac10() {
  Tally t;
  CohomologyStore store;
  for (const auto& g : catalog(16, [](const groups::FiniteGroup& g) { return g.order() > 1; }))
    for (unsigned n : {2u, 3u}) {
      auto c = residues::refinedSequenceCheck(store, g, n, static_cast<Scalar>(g->order()));
      std::size_t bad = 0;
      for (const auto& p : c.residues) bad += !p.passed;
      t.expect(c.passed(), label(g) + " n=" + std::to_string(n) + (c.nrInsideNab ? "" : " NR not in nab") +
                               (bad ? " " + std::to_string(bad) + " residue pairs" : ""));
    }
  return t.outcome("refined-sequence checks");
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double limitSeconds;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {"AC-1", 30, ac1},  {"AC-2", 60, ac2},  {"AC-3", 300, ac3}, {"AC-4", 900, ac4},  {"AC-5", 600, ac5},
      {"AC-6", 300, ac6}, {"AC-7", 1200, ac7}, {"AC-8", 600, ac8}, {"AC-9", 600, ac9}, {"AC-10", 900, ac10},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool inTime = secs <= c.limitSeconds;
    const bool ok = o.ok && inTime;
    failed += !ok;
    std::printf("%-5s %s  %.2fs (limit %.0fs)%s  %s\n", c.id, ok ? "PASS" : "FAIL", secs, c.limitSeconds,
                inTime ? "" : " over time", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, std::size(all));
  return failed ? 1 : 0;
}
