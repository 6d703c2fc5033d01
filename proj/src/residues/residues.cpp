#include "unram/residues/residues.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace unram::residues {

using cochain::CohomologyPtr;
using exactla::DenseVec;
using exactla::HowellBasis;
using exactla::ModSubquotient;
using exactla::SparseModMatrix;
using exactla::Submodule;
using groups::Subgroup;

// ---------------------------------------------------------------- residue

Cochain residueCochain(const Cochain& c, const ResiduePair& pair) {
  const unsigned n = c.degree();
  if (n == 0) throw DegreeZero("residue of a degree-0 class");
  const auto& g = *c.group();
  if (pair.subgroup.parent()->table() != g.table())
    throw cochain::GroupMismatch("residue pair belongs to another group");
  const Elem s = pair.element;
  for (Elem d : pair.subgroup.elements())
    if (!g.commute(s, d)) throw NotCentralizing("element does not centralize the subgroup");

  GroupPtr dg = pair.subgroup.asGroup();
  const auto& elems = pair.subgroup.elements();
  const Modulus& m = c.modulus();
  Cochain out(dg, n - 1, m);
  if (s == g.identity()) return out;

  std::vector<Elem> args(n);
  cochain::forEachTuple(*dg, n - 1, [&](std::uint64_t idx, std::span<const Elem> t) {
    Scalar acc = 0;
    for (unsigned j = 0; j < n; ++j) {
      unsigned k = 0;
      for (unsigned i = 0; i < j; ++i) args[k++] = elems[t[i]];
      args[k++] = s;
      for (unsigned i = j; i + 1 < n; ++i) args[k++] = elems[t[i]];
      const Scalar v = c(args);
      acc = (j % 2 == 0) ? m.add(acc, v) : m.sub(acc, v);
    }
    out.values()[idx] = acc;
  });
  return out;
}

CohClass residue(const CohClass& x, const ResiduePair& pair, CohomologyStore& store) {
  Cochain r = residueCochain(x.rep, pair);
  return store.get(r.group(), r.degree(), r.modulus().value())->classOf(r);
}

// ---------------------------------------------------------------- ambient

Ambient Ambient::of(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m, bool stabilized) {
  Ambient a;
  if (stabilized) {
    a.stable = store.stabilized(g, n, m);
    a.base = a.stable->base();
  } else {
    a.base = store.get(g, n, m);
  }
  return a;
}

std::vector<SparseRow> Ambient::relations() const {
  if (stable) return stable->relations();
  std::vector<SparseRow> out;
  const auto& f = base->invariantFactors();
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    const Scalar d = modulus().reduce(f[i]);
    if (d) out.push_back({{i, d}});
  }
  return out;
}

std::vector<Scalar> Ambient::invariantFactors() const {
  return stable ? stable->invariantFactors() : base->invariantFactors();
}

std::uint64_t Ambient::order() const { return stable ? stable->order() : base->order(); }

bool Ambient::isZero(const std::vector<Scalar>& coords) const {
  if (stable) return stable->isZero(coords);
  const auto& f = base->invariantFactors();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (coords[i] % f[i]) return false;
  return true;
}

// ---------------------------------------------------------------- subgroups

namespace {

SparseRow reduced(const std::vector<Scalar>& v, const Modulus& m) {
  std::vector<exactla::Entry> e;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (Scalar x = m.reduce(v[i])) e.push_back({i, x});
  return e;
}

// rows of a Howell kernel basis of the stacked matrix, truncated to the first r coordinates
std::vector<SparseRow> kernelHead(std::size_t totalCols, const Modulus& mod, std::vector<SparseRow> stacked,
                                  std::size_t r) {
  std::vector<SparseRow> out;
  if (totalCols == 0) {
    for (std::uint32_t i = 0; i < r; ++i) out.push_back({{i, 1}});
    return out;
  }
  HowellBasis k = exactla::kernelBasis(SparseModMatrix::fromRows(totalCols, mod, std::move(stacked)));
  for (const auto& row : k.rows()) {
    SparseRow head;
    for (const auto& e : row)
      if (e.col < r) head.push_back(e);
    if (!head.empty()) out.push_back(std::move(head));
  }
  return out;
}

}  // namespace

SubgroupOf::SubgroupOf(Ambient ambient, std::vector<SparseRow> generators) : ambient_(std::move(ambient)) {
  const Modulus& mod = ambient_.modulus();
  const std::size_t r = ambient_.rank();
  auto rel = ambient_.relations();
  std::vector<SparseRow> rows;
  for (auto& g : generators) {
    auto c = exactla::canonicalRow(std::move(g), mod);
    if (!c.empty()) rows.push_back(std::move(c));
  }
  rows.insert(rows.end(), rel.begin(), rel.end());
  basis_ = exactla::howellBasis(SparseModMatrix::fromRows(r, mod, rows));
  quotient_ = ModSubquotient(Submodule::spannedBy(mod, r, basis_.rows()), rel);
}

std::vector<std::vector<Scalar>> SubgroupOf::generatorCoords() const {
  std::vector<std::vector<Scalar>> out;
  for (const auto& l : quotient_.generatorLifts()) out.push_back(l);
  return out;
}

bool SubgroupOf::contains(const std::vector<Scalar>& coords) const {
  return basis_.contains(reduced(coords, ambient_.modulus()));
}

bool SubgroupOf::subsetOf(const SubgroupOf& o) const {
  for (const auto& row : basis_.rows())
    if (!o.basis_.contains(row)) return false;
  return true;
}

SubgroupOf SubgroupOf::intersect(const SubgroupOf& o) const {
  // x = Σ a_i u_i = Σ b_j v_j  ⇔  (a, -b) in the left kernel of [U; V]
  const auto& u = basis_.rows();
  std::vector<SparseRow> stacked = u;
  stacked.insert(stacked.end(), o.basis_.rows().begin(), o.basis_.rows().end());
  const Modulus& mod = ambient_.modulus();
  std::vector<SparseRow> gens;
  for (const auto& a : kernelHead(ambient_.rank(), mod, std::move(stacked), u.size())) {
    SparseRow x;
    for (const auto& e : a) x = exactla::combine(x, e.val, u[e.col], mod);
    gens.push_back(std::move(x));
  }
  return SubgroupOf(ambient_, std::move(gens));
}

SubgroupOf SubgroupOf::operator+(const SubgroupOf& o) const {
  std::vector<SparseRow> rows = basis_.rows();
  rows.insert(rows.end(), o.basis_.rows().begin(), o.basis_.rows().end());
  return SubgroupOf(ambient_, std::move(rows));
}

std::vector<Scalar> SubgroupOf::quotientBy(const SubgroupOf& o) const {
  const SubgroupOf common = intersect(o);
  ModSubquotient q(Submodule::spannedBy(ambient_.modulus(), ambient_.rank(), basis_.rows()), common.basis_.rows());
  return q.invariantFactors();
}

SubgroupOf jointKernel(const Ambient& source, const std::vector<CoordinateMap>& maps) {
  const std::size_t r = source.rank();
  const Modulus& mod = source.modulus();
  std::vector<std::size_t> offset;
  std::size_t cols = 0;
  for (const auto& f : maps) {
    if (!(f.target.modulus() == mod)) throw cochain::ModulusMismatch("kernel of maps between different moduli");
    offset.push_back(cols);
    cols += f.target.rank();
  }
  std::vector<SparseRow> stacked(r);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const auto& f = maps[k];
    for (std::size_t i = 0; i < r; ++i)
      for (std::uint32_t j = 0; j < f.images[i].size(); ++j)
        if (Scalar v = mod.reduce(f.images[i][j])) stacked[i].push_back({static_cast<std::uint32_t>(offset[k] + j), v});
  }
  for (std::size_t k = 0; k < maps.size(); ++k) {
    auto zero = maps[k].target.relations();
    zero.insert(zero.end(), maps[k].extraZero.begin(), maps[k].extraZero.end());
    for (const auto& z : zero) {
      SparseRow row;
      for (const auto& e : z) row.push_back({static_cast<std::uint32_t>(offset[k] + e.col), e.val});
      stacked.push_back(std::move(row));
    }
  }
  return SubgroupOf(source, kernelHead(cols, mod, std::move(stacked), r));
}

// ---------------------------------------------------------------- parallel sweep

void parallelFor(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned width = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

// ---------------------------------------------------------------- kernels

const char* familyName(Family f) { return f == Family::Abelian ? "abelian" : "bicyclic"; }

namespace {

std::vector<std::vector<Scalar>> imagesUnder(const Ambient& source, const CohomologyPtr& target,
                                             const std::function<Cochain(const Cochain&)>& f) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& c : source.base->generatorCocycles()) out.push_back(target->coordinates(f(c)));
  return out;
}

CoordinateMap residueMap(CohomologyStore& store, const Ambient& source, const ResiduePair& pair, bool stabilized) {
  const unsigned n = source.base->degree();
  const Scalar m = source.modulus().value();
  GroupPtr dg = pair.subgroup.asGroup();
  CoordinateMap f{Ambient::of(store, dg, n - 1, m, stabilized), {}, {}};
  f.images = imagesUnder(source, f.target.base, [&](const Cochain& c) { return residueCochain(c, pair); });
  return f;
}

CoordinateMap restrictionMap(CohomologyStore& store, const Ambient& source, const Subgroup& a, bool stabilized) {
  const unsigned n = source.base->degree();
  const Scalar m = source.modulus().value();
  const auto inc = a.inclusion();
  CoordinateMap f{Ambient::of(store, a.asGroup(), n, m, stabilized), {}, {}};
  f.images = imagesUnder(source, f.target.base, [&](const Cochain& c) { return cochain::pullbackCochain(inc, c); });
  return f;
}

std::vector<ResiduePair> pairsFor(const GroupPtr& g, bool allCentral) {
  if (!allCentral) return groups::residuePairs(g);
  // every (D, s) with s centralizing D
  std::vector<ResiduePair> out;
  for (const auto& d : groups::allSubgroups(g))
    for (Elem s = 0; s < g->order(); ++s) {
      bool central = true;
      for (Elem x : d.elements()) central = central && g->commute(s, x);
      if (central) out.push_back({d, s, g->elementOrder(s)});
    }
  return out;
}

// Restriction to A factors through any abelian subgroup containing A, and
// restriction preserves Chern products, so maximal ones suffice.
std::vector<Subgroup> family(const GroupPtr& g, Family f) {
  if (f == Family::Bicyclic) return groups::bicyclicSubgroups(g);
  auto all = groups::abelianSubgroups(g);
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < all.size() && maximal; ++j)
      if (j != i && all[j].order() > all[i].order() && all[i].members().subsetOf(all[j].members())) maximal = false;
    if (maximal) out.push_back(all[i]);
  }
  return out;
}

std::vector<CoordinateMap> residueMaps(CohomologyStore& store, const Ambient& source, const std::vector<ResiduePair>& pairs,
                                       const KernelOptions& opt) {
  std::vector<CoordinateMap> maps(pairs.size());
  parallelFor(pairs.size(), opt.jobs,
              [&](std::size_t i) { maps[i] = residueMap(store, source, pairs[i], opt.stabilized); });
  return maps;
}

std::vector<SparseRow> chernRows(CohomologyStore& store, const GroupPtr& g, Scalar m) {
  auto h1 = store.get(g, 1, m);
  auto h3 = store.get(g, 3, m);
  std::vector<SparseRow> rows;
  const auto& chi = h1->generatorCocycles();
  std::vector<Cochain> beta;
  for (const auto& c : chi) beta.push_back(cochain::bocksteinCochain(c));
  for (const auto& x : chi)
    for (const auto& b : beta) rows.push_back(reduced(h3->coordinates(cochain::cupCochain(x, b)), h3->modulus()));
  return rows;
}

}  // namespace

SubgroupOf nrKernel(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m, const KernelOptions& opt) {
  if (n == 0) throw DegreeZero("residue kernel in degree 0");
  Ambient source = Ambient::of(store, g, n, m, opt.stabilized);
  return jointKernel(source, residueMaps(store, source, pairsFor(g, opt.allCentralPairs), opt));
}

SubgroupOf nabKernel(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m, Family fam,
                     const KernelOptions& opt) {
  Ambient source = Ambient::of(store, g, n, m, opt.stabilized);
  const auto subs = family(g, fam);
  std::vector<CoordinateMap> maps(subs.size());
  parallelFor(subs.size(), opt.jobs,
              [&](std::size_t i) { maps[i] = restrictionMap(store, source, subs[i], opt.stabilized); });
  return jointKernel(source, maps);
}

SubgroupOf chernProducts(CohomologyStore& store, const GroupPtr& g, Scalar m, bool stabilized) {
  return SubgroupOf(Ambient::of(store, g, 3, m, stabilized), chernRows(store, g, m));
}

SubgroupOf nabModuloChern(CohomologyStore& store, const GroupPtr& g, Scalar m, const KernelOptions& opt) {
  Ambient source = Ambient::of(store, g, 3, m, opt.stabilized);
  const auto subs = family(g, Family::Abelian);
  std::vector<CoordinateMap> maps(subs.size());
  parallelFor(subs.size(), opt.jobs, [&](std::size_t i) {
    maps[i] = restrictionMap(store, source, subs[i], opt.stabilized);
    maps[i].extraZero = chernRows(store, subs[i].asGroup(), m);
  });
  return jointKernel(source, maps);
}

BogomolovResult bogomolovMultiplier(CohomologyStore& store, const GroupPtr& g, unsigned jobs) {
  const Scalar m = static_cast<Scalar>(g->order());
  KernelOptions opt{true, jobs, false};
  BogomolovResult r{nabKernel(store, g, 2, m, Family::Bicyclic, opt), nrKernel(store, g, 2, m, opt)};
  if (!(r.bicyclic == r.residue))
    throw ConsistencyFailure("residue kernel and bicyclic restriction kernel differ for " +
                             (g->name().empty() ? std::string("group") : g->name()));
  return r;
}

SubgroupOf permutationNegligible(CohomologyStore& store, const GroupPtr& g, unsigned jobs) {
  const Scalar m = static_cast<Scalar>(g->order());
  Ambient target = Ambient::of(store, g, 3, m, true);
  const auto subs = groups::allSubgroups(g);
  std::vector<std::vector<SparseRow>> parts(subs.size());
  parallelFor(subs.size(), jobs, [&](std::size_t k) {
    const Subgroup& h = subs[k];
    GroupPtr hg = h.asGroup();
    const cochain::CosetSystem cosets(h);
    const auto& chi = store.get(hg, 1, m)->generatorCocycles();
    std::vector<Cochain> beta;
    for (const auto& c : chi) beta.push_back(cochain::bocksteinCochain(c));
    for (const auto& x : chi)
      for (const auto& b : beta) {
        Cochain t = cochain::transferCochain(h, cochain::cupCochain(x, b), cosets);
        parts[k].push_back(reduced(target.base->coordinates(t), target.modulus()));
      }
  });
  std::vector<SparseRow> rows;
  for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
  return SubgroupOf(target, std::move(rows));
}

H3Result h3NrQuotient(CohomologyStore& store, const GroupPtr& g, unsigned jobs) {
  const Scalar m = static_cast<Scalar>(g->order());
  H3Result r{nrKernel(store, g, 3, m, {true, jobs, false}), permutationNegligible(store, g, jobs), {}};
  r.quotient = r.nr.quotientBy(r.negligible);
  return r;
}

// ---------------------------------------------------------------- checks

bool RefinedCheck::passed() const {
  if (!nrInsideNab) return false;
  for (const auto& p : residues)
    if (!p.passed) return false;
  return true;
}

RefinedCheck refinedSequenceCheck(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m, unsigned jobs) {
  if (n < 1 || n > 3) throw PreconditionViolated("refined sequence check is implemented in degrees 1..3");
  // The check runs in the Q/Z model: the working modulus absorbs exp(G).
  const Scalar e = g->exponent();
  const Scalar mm = static_cast<Scalar>(std::lcm<std::uint64_t>(m, e));
  KernelOptions opt{true, jobs, false};

  RefinedCheck out;
  out.degree = n;
  out.modulus = mm;
  out.nabVariant = n == 3 ? "modulo Chern classes" : "literal";

  Ambient source = Ambient::of(store, g, n, mm, true);
  const auto pairs = groups::residuePairs(g);
  const auto maps = residueMaps(store, source, pairs, opt);
  const SubgroupOf nr = jointKernel(source, maps);
  const SubgroupOf nab = n == 3 ? nabModuloChern(store, g, mm, opt) : nabKernel(store, g, n, mm, Family::Abelian, opt);
  out.nrInsideNab = nr.subsetOf(nab);

  // nab_{n-1}(D) for each distinct centralizer
  std::map<groups::Bitset, SubgroupOf> targetNab;
  for (const auto& p : pairs)
    if (!targetNab.count(p.subgroup.members()))
      targetNab.emplace(p.subgroup.members(), nabKernel(store, p.subgroup.asGroup(), n - 1, mm, Family::Abelian, opt));

  const Modulus& mod = source.modulus();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const SubgroupOf& t = targetNab.at(pairs[k].subgroup.members());
    bool ok = true;
    for (const auto& row : nab.basis().rows()) {
      std::vector<Scalar> img(maps[k].target.rank(), 0);
      for (const auto& en : row)
        for (std::size_t j = 0; j < img.size(); ++j)
          img[j] = mod.add(img[j], mod.mul(en.val, mod.reduce(maps[k].images[en.col][j])));
      if (!t.contains(img)) {
        ok = false;
        break;
      }
    }
    out.residues.push_back({pairs[k].element, pairs[k].subgroup.order(), ok});
  }
  return out;
}

bool residueCupCheck(const ResiduePair& pair, const CohClass& x, const CohClass& y, CohomologyStore& store) {
  const unsigned p = x.rep.degree(), q = y.rep.degree();
  if (p < 1 || q < 1 || p + q > 3) throw PreconditionViolated("residue/cup check needs p, q >= 1 and p + q <= 3");
  if (!(x.rep.modulus() == y.rep.modulus())) throw cochain::ModulusMismatch("cup of classes with different moduli");
  const auto inc = pair.subgroup.inclusion();
  const Cochain lhs = residueCochain(cochain::cupCochain(x.rep, y.rep), pair);
  const Cochain a = cochain::cupCochain(residueCochain(x.rep, pair), cochain::pullbackCochain(inc, y.rep));
  const Cochain b = cochain::cupCochain(cochain::pullbackCochain(inc, x.rep), residueCochain(y.rep, pair));
  const Cochain rhs = p % 2 == 0 ? a + b : a - b;
  const Cochain diff = lhs - rhs;
  auto home = store.get(diff.group(), diff.degree(), diff.modulus().value());
  return home->classOf(diff).isZero();
}

// ---------------------------------------------------------------- report

std::uint64_t orderOf(const std::vector<Scalar>& factors) {
  std::uint64_t o = 1;
  for (Scalar f : factors) o *= f;
  return o;
}

bool InvariantReport::consistent() const {
  for (const auto& d : degrees) {
    const std::uint64_t amb = d.ambientOrder ? d.ambientOrder : orderOf(d.cohomology);
    for (const auto* sub : {&d.nr, &d.nabAbelian, &d.nabBicyclic})
      if (amb % orderOf(*sub)) return false;
  }
  if (b0 && h2Order && h2Order % orderOf(*b0)) return false;
  return true;
}

}  // namespace unram::residues
