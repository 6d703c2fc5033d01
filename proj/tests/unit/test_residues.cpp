#include "doctest.h"

#include "unram/groups/catalog.hpp"
#include "unram/residues/residues.hpp"

#include <random>

using namespace unram;
using namespace unram::residues;
using cochain::CohomologyPtr;
using cochain::Modulus;
using groups::catalogFromString;

namespace {

CohClass randomClass(const CohomologyPtr& h, std::mt19937_64& rng) {
  std::vector<std::int64_t> c(h->rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::int64_t>(rng() % h->invariantFactors()[i]);
  return h->element(c);
}

Cochain randomCoboundary(const GroupPtr& g, unsigned n, Modulus m, std::mt19937_64& rng) {
  exactla::DenseVec v(cochain::cochainDim(g->order(), n - 1));
  for (auto& x : v) x = static_cast<Scalar>(rng() % m.value());
  return cochain::coboundary(Cochain(g, n - 1, m, v));
}

ResiduePair pairOf(const GroupPtr& g, Elem s) { return {groups::centralizer(g, s), s, g->elementOrder(s)}; }

// |NR| by evaluating every class of the base group against every residue pair
std::uint64_t bruteNrOrder(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m) {
  auto stable = store.stabilized(g, n, m);
  auto base = stable->base();
  const auto& f = base->invariantFactors();
  std::vector<std::int64_t> c(f.size(), 0);
  std::uint64_t count = 0;
  const auto pairs = groups::residuePairs(g);
  for (;;) {
    const CohClass x = base->element(c);
    bool unramified = true;
    for (const auto& p : pairs) {
      const CohClass r = residue(x, p, store);
      auto target = store.stabilized(r.rep.group(), n - 1, m);
      if (!target->isZero(r.coords)) {
        unramified = false;
        break;
      }
    }
    count += unramified;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == static_cast<std::int64_t>(f[i])) c[i++] = 0;
    if (i == c.size()) break;
  }
  return count / (base->order() / stable->order());
}

}  // namespace

TEST_CASE("residue examples") {
  CohomologyStore store;
  auto z4 = catalogFromString("cyclic:4");
  const Modulus m16(16);

  SUBCASE("degree 1 gives the character value") {
    auto chi = Cochain::fromFunction(z4, 1, m16, [](std::span<const Elem> a) { return 4 * std::int64_t(a[0]); });
    for (Elem s = 0; s < 4; ++s) {
      auto r = residueCochain(chi, pairOf(z4, s));
      CHECK(r.degree() == 0);
      CHECK(r({}) == (4 * s) % 16);
    }
  }
  SUBCASE("canonical inertia value on Z/4 with m = 16") {
    auto h1 = store.get(z4, 1, 16);
    auto chi = h1->classOf(Cochain::fromFunction(z4, 1, m16, [](std::span<const Elem> a) { return 4 * std::int64_t(a[0]); }));
    const ResiduePair full{groups::Subgroup::whole(z4), 1, 4};
    auto r = residue(chi, full, store);
    CHECK(r.rep({}) == 4);
    CHECK(r.coords == std::vector<Scalar>{4});
  }
  SUBCASE("degree 2 is c(s,d) - c(d,s)") {
    auto s3 = catalogFromString("symmetric:3");
    std::mt19937_64 rng(3);
    exactla::DenseVec v(cochain::cochainDim(6, 2));
    for (auto& x : v) x = static_cast<Scalar>(rng() % 6);
    const Cochain c(s3, 2, Modulus(6), v);
    for (Elem s = 0; s < 6; ++s) {
      auto p = pairOf(s3, s);
      auto r = residueCochain(c, p);
      const auto& el = p.subgroup.elements();
      for (Elem d = 0; d < el.size(); ++d)
        CHECK(r({d}) == Modulus(6).sub(c({s, el[d]}), c({el[d], s})));
    }
  }
  SUBCASE("errors") {
    auto s3 = catalogFromString("symmetric:3");
    const Cochain c(s3, 2, Modulus(6));
    // an element outside the centre does not centralize the whole group
    Elem s = 0;
    while (groups::centralizer(s3, s).order() == 6) ++s;
    CHECK_THROWS_AS(residueCochain(c, ResiduePair{groups::Subgroup::whole(s3), s, s3->elementOrder(s)}), NotCentralizing);
    CHECK_THROWS_AS(residueCochain(Cochain(s3, 0, Modulus(6)), pairOf(s3, s)), DegreeZero);
  }
}

TEST_CASE("residue properties on random classes") {
  CohomologyStore store;
  std::mt19937_64 rng(11);
  for (const char* name : {"cyclic:4", "abelian:2,2", "symmetric:3", "dihedral:8", "quaternion:8"}) {
    auto g = catalogFromString(name);
    const Scalar m = static_cast<Scalar>(g->order());
    for (unsigned n : {1u, 2u, 3u}) {
      auto h = store.get(g, n, m);
      for (int trial = 0; trial < 4; ++trial) {
        const CohClass x = randomClass(h, rng), y = randomClass(h, rng);
        const Elem s = static_cast<Elem>(rng() % g->order());
        const auto p = pairOf(g, s);
        const CohClass rx = residue(x, p, store);
        CAPTURE(name);
        CAPTURE(n);
        // well-defined on classes
        const Cochain shifted = x.rep + randomCoboundary(g, n, h->modulus(), rng);
        CHECK(residue(h->classOf(shifted), p, store) == rx);
        // linear
        const std::int64_t k = static_cast<std::int64_t>(rng() % m);
        CHECK(residue(x.scaled(k) + y, p, store) == rx.scaled(k) + residue(y, p, store));
        // killed by the order of s
        CHECK(rx.scaled(p.torsionOrder).isZero());
      }
      // identity pair
      CHECK(residue(randomClass(h, rng), pairOf(g, g->identity()), store).isZero());
    }
  }
}

TEST_CASE("Leibniz law for residues of cup products") {
  CohomologyStore store;
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const char* name : {"cyclic:4", "abelian:2,2", "symmetric:3", "dihedral:8", "quaternion:8"}) {
    auto g = catalogFromString(name);
    const Scalar m = static_cast<Scalar>(g->order());
    for (auto [p, q] : {std::pair{1u, 1u}, {1u, 2u}, {2u, 1u}})
      for (int trial = 0; trial < 8; ++trial) {
        const CohClass x = randomClass(store.get(g, p, m), rng);
        const CohClass y = randomClass(store.get(g, q, m), rng);
        const auto pair = pairOf(g, static_cast<Elem>(rng() % g->order()));
        CHECK(residueCupCheck(pair, x, y, store));
        ++checked;
      }
  }
  CHECK(checked >= 100);

  auto z4 = catalogFromString("cyclic:4");
  auto chi = store.get(z4, 1, 4)->classOf(
      Cochain::fromFunction(z4, 1, Modulus(4), [](std::span<const Elem> a) { return std::int64_t(a[0]); }));
  CHECK(residueCupCheck({groups::Subgroup::whole(z4), 1, 4}, chi, chi, store));
  CHECK_THROWS_AS(residueCupCheck(pairOf(z4, 1), store.get(z4, 2, 4)->zero(), store.get(z4, 2, 4)->zero(), store),
                  PreconditionViolated);
}

TEST_CASE("subgroup arithmetic inside an ambient") {
  CohomologyStore store;
  auto g = catalogFromString("abelian:2,4");
  Ambient a = Ambient::of(store, g, 2, 8, false);
  REQUIRE(a.rank() >= 2);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto randomRows = [&] {
      std::vector<SparseRow> rows;
      for (int k = 0; k < 2; ++k) {
        std::vector<Scalar> v(a.rank());
        for (auto& x : v) x = static_cast<Scalar>(rng() % 8);
        rows.push_back(exactla::sparseFromDense(v));
      }
      return rows;
    };
    SubgroupOf u(a, randomRows()), v(a, randomRows());
    const SubgroupOf both = u.intersect(v), sum = u + v;
    CHECK(u.order() * v.order() == sum.order() * both.order());
    CHECK(both.subsetOf(u));
    CHECK(both.subsetOf(v));
    CHECK(u.subsetOf(sum));
    CHECK(orderOf(u.quotientBy(v)) * both.order() == u.order());
  }
  CHECK(SubgroupOf(a, {}).isTrivial());
}

TEST_CASE("residue kernels") {
  CohomologyStore store;

  SUBCASE("degree 1 kernel is trivial") {
    for (const char* name : {"cyclic:2", "cyclic:6", "symmetric:3", "quaternion:8", "abelian:2,2,2"}) {
      auto g = catalogFromString(name);
      CHECK(nrKernel(store, g, 1, g->order()).isTrivial());
      CHECK(nrKernel(store, g, 1, g->order(), {false, 1, false}).isTrivial());
    }
  }
  SUBCASE("abelian groups in degree 2 against evaluation class by class") {
    for (const auto& name : groups::catalogUpTo(16)) {
      auto g = catalogFromString(name);
      if (!g->isAbelian() || g->order() == 1) continue;
      CAPTURE(name);
      auto nr = nrKernel(store, g, 2, g->order());
      CHECK(nr.isTrivial());
      CHECK(bruteNrOrder(store, g, 2, g->order()) == 1);
    }
  }
  SUBCASE("nonabelian examples") {
    auto q8 = catalogFromString("quaternion:8");
    CHECK(nrKernel(store, q8, 2, 8).isTrivial());
    auto s3 = catalogFromString("symmetric:3");
    CHECK(nabKernel(store, s3, 2, 6, Family::Bicyclic).isTrivial());
    auto e8 = catalogFromString("abelian:2,2,2");
    CHECK(nabKernel(store, e8, 2, 8, Family::Bicyclic).isTrivial());
    for (const char* name : {"dihedral:8", "alternating:4", "heisenberg:3"}) {
      auto g = catalogFromString(name);
      CHECK(nrKernel(store, g, 2, g->order()).order() == bruteNrOrder(store, g, 2, g->order()));
    }
  }
  SUBCASE("abelian groups are killed by restriction to themselves") {
    for (const char* name : {"cyclic:6", "abelian:2,4", "abelian:3,3"})
      for (unsigned n : {1u, 2u, 3u}) {
        auto g = catalogFromString(name);
        CHECK(nabKernel(store, g, n, g->order(), Family::Abelian).isTrivial());
      }
  }
  SUBCASE("inclusions between kernels") {
    for (const char* name : {"symmetric:3", "dihedral:8", "quaternion:8", "alternating:4", "abelian:2,2,2"})
      for (unsigned n : {2u, 3u}) {
        auto g = catalogFromString(name);
        const Scalar m = g->order();
        CAPTURE(name);
        CAPTURE(n);
        auto ab = nabKernel(store, g, n, m, Family::Abelian);
        auto bi = nabKernel(store, g, n, m, Family::Bicyclic);
        CHECK(ab.subsetOf(bi));
        auto nr = nrKernel(store, g, n, m);
        if (n == 2) CHECK(nr.subsetOf(bi));
        // the fuller index set of pairs cuts out the same subgroup
        CHECK(nrKernel(store, g, n, m, {true, 1, true}) == nr);
      }
  }
  SUBCASE("parallel sweep is deterministic") {
    auto g = catalogFromString("dihedral:16");
    auto a = nrKernel(store, g, 2, 16, {true, 1, false});
    auto b = nrKernel(store, g, 2, 16, {true, 4, false});
    CHECK(a == b);
    CHECK(a.basis().rows() == b.basis().rows());
  }
}

TEST_CASE("parallelFor") {
  std::vector<int> out(100, 0);
  parallelFor(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallelFor(10, 3,
                              [](std::size_t i) {
                                if (i == 7) throw std::runtime_error("boom");
                              }),
                  std::runtime_error);
}

TEST_CASE("Bogomolov multiplier") {
  CohomologyStore store;
  for (const char* name : {"trivial", "cyclic:6", "abelian:2,2", "abelian:4,4", "dihedral:8", "quaternion:8",
                           "symmetric:4", "alternating:4", "heisenberg:3"}) {
    auto g = catalogFromString(name);
    CAPTURE(name);
    auto b = bogomolovMultiplier(store, g);
    CHECK(b.invariantFactors().empty());
    CHECK(b.bicyclic == b.residue);
  }
}

TEST_CASE("degree three") {
  CohomologyStore store;
  SUBCASE("Z/2: all of H^3 is permutation-negligible") {
    auto z2 = catalogFromString("cyclic:2");
    auto p = permutationNegligible(store, z2);
    CHECK(p.invariantFactors() == std::vector<Scalar>{2});
    CHECK(p.order() == p.ambient().order());
    CHECK(h3NrQuotient(store, z2).quotient.empty());
  }
  SUBCASE("trivial group") {
    auto e = catalogFromString("trivial");
    CHECK(permutationNegligible(store, e).isTrivial());
    CHECK(h3NrQuotient(store, e).quotient.empty());
  }
  SUBCASE("abelian groups of small order") {
    for (const char* name : {"cyclic:3", "abelian:2,2", "cyclic:4", "cyclic:5", "cyclic:7", "cyclic:8", "abelian:3,3"}) {
      auto g = catalogFromString(name);
      CAPTURE(name);
      auto r = h3NrQuotient(store, g);
      CHECK(r.quotient.empty());
      CHECK(r.nr.order() == bruteNrOrder(store, g, 3, g->order()));
    }
  }
  SUBCASE("Chern products") {
    auto z2 = catalogFromString("cyclic:2");
    CHECK(chernProducts(store, z2, 2).order() == 2);
    auto s3 = catalogFromString("symmetric:3");
    auto ch = chernProducts(store, s3, 6);
    CHECK(ch.subsetOf(nabModuloChern(store, s3, 6)));
  }
}

TEST_CASE("refined sequence checks") {
  CohomologyStore store;
  for (const char* name : {"cyclic:6", "abelian:2,2", "symmetric:3", "dihedral:8", "quaternion:8"})
    for (unsigned n : {2u, 3u}) {
      auto g = catalogFromString(name);
      CAPTURE(name);
      CAPTURE(n);
      auto c = refinedSequenceCheck(store, g, n, g->order());
      CHECK(c.passed());
      CHECK(c.residues.size() == g->order());
    }
  auto d8 = catalogFromString("dihedral:8");
  auto c = refinedSequenceCheck(store, d8, 3, 8);
  CHECK(c.passed());
  CHECK(c.nabVariant == "modulo Chern classes");
  CHECK(c.modulus == 8);
}

TEST_CASE("report invariants") {
  InvariantReport r;
  r.degrees.push_back({2, {2, 2}, {2}, {}, {2}, 4});
  r.b0 = std::vector<Scalar>{};
  r.h2Order = 4;
  CHECK(r.consistent());
  r.degrees[0].nr = {8};
  CHECK_FALSE(r.consistent());
}
