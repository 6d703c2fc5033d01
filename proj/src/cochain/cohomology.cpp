#include "unram/cochain/cohomology.hpp"

#include "unram/cochain/stabilize.hpp"

namespace unram::cochain {

using exactla::Entry;
using exactla::ModSubquotient;

namespace {

bool sameHome(const CohomologyPtr& a, const CohomologyPtr& b) {
  if (a == b) return true;
  return a && b && a->degree() == b->degree() && a->modulus() == b->modulus() &&
         a->invariantFactors() == b->invariantFactors() && a->group()->table() == b->group()->table();
}

}  // namespace

bool CohClass::isZero() const {
  for (Scalar c : coords)
    if (c) return false;
  return true;
}

CohClass CohClass::operator+(const CohClass& o) const {
  if (!sameHome(home, o.home)) throw GroupMismatch("adding classes from different cohomology groups");
  CohClass r{home, coords, rep + o.rep};
  const auto& f = home->invariantFactors();
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] = static_cast<Scalar>((std::uint64_t(coords[i]) + o.coords[i]) % f[i]);
  return r;
}

CohClass CohClass::scaled(std::int64_t k) const {
  CohClass r{home, coords, rep.scaled(k)};
  const auto& f = home->invariantFactors();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    std::int64_t fi = f[i];
    std::int64_t kk = ((k % fi) + fi) % fi;
    r.coords[i] = static_cast<Scalar>(kk * coords[i] % fi);
  }
  return r;
}

bool CohClass::operator==(const CohClass& o) const { return sameHome(home, o.home) && coords == o.coords; }

ModSubquotient computeCohomologyStructure(const GroupPtr& g, unsigned n, Modulus m, const Budget& budget) {
  checkBudget(g->order(), n, budget);
  const std::uint64_t dim = cochainDim(g->order(), n);
  exactla::RowEliminator el(m, dim);
  std::vector<Term> terms;
  std::vector<Entry> buf;
  forEachTuple(*g, n + 1, [&](std::uint64_t, std::span<const Elem> t) {
    coboundaryTerms(*g, t, terms);
    buf.clear();
    for (const Term& term : terms) buf.push_back({static_cast<std::uint32_t>(term.index), m.fromInt(term.sign)});
    el.addEntries(buf);
  });
  auto cocycles = exactla::Submodule::solutionsOf(std::move(el).finish());
  std::vector<SparseRow> boundaries;
  if (n >= 1) boundaries = coboundaryMatrix(g, n - 1, m, budget).rowData();
  return ModSubquotient(std::move(cocycles), boundaries);
}

CohomologyPtr CohomologyGroup::compute(const GroupPtr& g, unsigned n, Modulus m, const Budget& budget) {
  return fromStructure(g, n, m, computeCohomologyStructure(g, n, m, budget));
}

CohomologyPtr CohomologyGroup::fromStructure(const GroupPtr& g, unsigned n, Modulus m, ModSubquotient structure) {
  if (structure.ambientDim() != cochainDim(g->order(), n) || !(structure.modulus() == m))
    throw std::invalid_argument("cohomology structure does not match group, degree and modulus");
  std::shared_ptr<CohomologyGroup> h(new CohomologyGroup());
  h->group_ = g;
  h->degree_ = n;
  h->mod_ = m;
  h->sq_ = std::move(structure);
  h->buildGenerators();
  return h;
}

void CohomologyGroup::buildGenerators() {
  // Greedy support reduction: subtract a multiple of a coboundary generator
  // whenever it kills an entry and shrinks the support.
  const auto& den = sq_.denominatorGenerators();
  const bool reduce = sq_.ambientDim() <= 20000 && den.size() * sq_.generatorLifts().size() <= 2'000'000;
  gens_.clear();
  for (const auto& lift : sq_.generatorLifts()) {
    DenseVec v = lift;
    if (reduce) {
      for (const auto& b : den) {
        if (b.empty()) continue;
        const Entry lead = b.front();
        if (!v[lead.col] || !mod_.isUnit(lead.val)) continue;
        const Scalar k = mod_.mul(v[lead.col], mod_.inverse(lead.val));
        std::ptrdiff_t delta = 0;
        for (const Entry& e : b) {
          Scalar nv = mod_.sub(v[e.col], mod_.mul(k, e.val));
          delta += (nv != 0) - (v[e.col] != 0);
        }
        if (delta < 0)
          for (const Entry& e : b) v[e.col] = mod_.sub(v[e.col], mod_.mul(k, e.val));
      }
    }
    gens_.emplace_back(group_, degree_, mod_, std::move(v));
  }
}

std::vector<Scalar> CohomologyGroup::coordinates(const Cochain& c) const {
  if (c.degree() != degree_ || !(c.modulus() == mod_) || c.size() != sq_.ambientDim())
    throw std::invalid_argument("cochain does not belong to this cohomology group");
  try {
    return sq_.coordinates(c.values());
  } catch (const exactla::NotInNumerator&) {
    throw NotACocycle("cochain is not a cocycle");
  }
}

CohClass CohomologyGroup::classOf(const Cochain& c) const { return {shared_from_this(), coordinates(c), c}; }

CohClass CohomologyGroup::element(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != gens_.size()) throw std::invalid_argument("coordinate count mismatch");
  const auto& f = invariantFactors();
  CohClass r{shared_from_this(), std::vector<Scalar>(coords.size()), Cochain(group_, degree_, mod_)};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    std::int64_t fi = f[i];
    r.coords[i] = static_cast<Scalar>(((coords[i] % fi) + fi) % fi);
    if (r.coords[i]) r.rep = r.rep + gens_[i].scaled(r.coords[i]);
  }
  return r;
}

CohClass CohomologyGroup::generator(std::size_t i) const {
  std::vector<std::int64_t> c(gens_.size(), 0);
  c.at(i) = 1;
  return element(c);
}

CohClass CohomologyGroup::zero() const { return element(std::vector<std::int64_t>(gens_.size(), 0)); }

CohomologyStore::CohomologyStore(Budget budget, std::shared_ptr<PersistenceBackend> backend)
    : budget_(budget), backend_(std::move(backend)) {}

void CohomologyStore::setBackend(std::shared_ptr<PersistenceBackend> backend) {
  std::lock_guard lock(mu_);
  backend_ = std::move(backend);
}

CohomologyPtr CohomologyStore::get(const GroupPtr& g, unsigned n, Scalar m) {
  Key key{g->canonicalBytes(), n, m};
  std::shared_ptr<PersistenceBackend> backend;
  {
    std::lock_guard lock(mu_);
    if (auto it = groups_.find(key); it != groups_.end()) return it->second;
    backend = backend_;
  }
  CohomologyPtr h;
  if (backend) {
    if (auto s = backend->load(*g, n, m)) {
      h = CohomologyGroup::fromStructure(g, n, Modulus(m), std::move(*s));
      std::lock_guard lock(mu_);
      ++loaded_;
    }
  }
  if (!h) {
    h = CohomologyGroup::compute(g, n, Modulus(m), budget_);
    if (backend) backend->save(*g, n, m, h->structure());
    std::lock_guard lock(mu_);
    ++computed_;
  }
  std::lock_guard lock(mu_);
  return groups_.emplace(std::move(key), h).first->second;
}

StabilizedPtr CohomologyStore::stabilized(const GroupPtr& g, unsigned n, Scalar m0) {
  Key key{g->canonicalBytes(), n, m0};
  {
    std::lock_guard lock(mu_);
    if (auto it = stable_.find(key); it != stable_.end()) return it->second;
  }
  StabilizedPtr s = qzStabilize(*this, g, n, m0);
  std::lock_guard lock(mu_);
  return stable_.emplace(std::move(key), s).first->second;
}

}  // namespace unram::cochain
