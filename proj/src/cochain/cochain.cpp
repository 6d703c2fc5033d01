#include "unram/cochain/cochain.hpp"

#include <limits>

namespace unram::cochain {

using groups::FiniteGroup;

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint64_t req, std::uint64_t allow)
    : std::runtime_error(what + " (required " + std::to_string(req) + ", allowed " + std::to_string(allow) + ")"),
      required(req),
      allowed(allow) {}

std::uint64_t cochainDim(std::size_t groupOrder, unsigned n) {
  std::uint64_t d = 1;
  const std::uint64_t b = groupOrder - 1;
  for (unsigned i = 0; i < n; ++i) {
    if (b && d > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    d *= b;
  }
  return d;
}

void checkBudget(std::size_t groupOrder, unsigned n, const Budget& budget) {
  const std::uint64_t unknowns = cochainDim(groupOrder, n);
  const std::uint64_t equations = cochainDim(groupOrder, n + 1);
  if (unknowns > budget.maxUnknowns)
    throw BudgetExceeded("degree-" + std::to_string(n) + " cochain space of a group of order " +
                             std::to_string(groupOrder) + " is too large",
                         unknowns, budget.maxUnknowns);
  if (equations > budget.maxEquations)
    throw BudgetExceeded("degree-" + std::to_string(n) + " cocycle system of a group of order " +
                             std::to_string(groupOrder) + " is too large",
                         equations, budget.maxEquations);
}

std::uint64_t tupleIndex(const FiniteGroup& g, std::span<const Elem> args) {
  const std::uint64_t b = g.order() - 1;
  std::uint64_t idx = 0;
  for (Elem a : args) idx = idx * b + g.ordinal(a);
  return idx;
}

void tupleAt(const FiniteGroup& g, std::uint64_t index, std::span<Elem> out) {
  const std::uint64_t b = g.order() - 1;
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = g.fromOrdinal(static_cast<std::uint32_t>(index % b));
    index /= b;
  }
}

void forEachTuple(const FiniteGroup& g, unsigned n,
                  const std::function<void(std::uint64_t, std::span<const Elem>)>& f) {
  const std::uint32_t b = static_cast<std::uint32_t>(g.order() - 1);
  if (n > 0 && b == 0) return;
  std::vector<std::uint32_t> ord(n, 0);
  std::vector<Elem> tup(n);
  for (unsigned i = 0; i < n; ++i) tup[i] = g.fromOrdinal(0);
  const std::uint64_t total = cochainDim(g.order(), n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    f(idx, tup);
    for (unsigned i = n; i-- > 0;) {
      if (++ord[i] < b) {
        tup[i] = g.fromOrdinal(ord[i]);
        break;
      }
      ord[i] = 0;
      tup[i] = g.fromOrdinal(0);
    }
  }
}

void coboundaryTerms(const FiniteGroup& g, std::span<const Elem> t, std::vector<Term>& out) {
  out.clear();
  const std::size_t k = t.size();  // n + 1
  const unsigned n = static_cast<unsigned>(k - 1);
  const std::uint64_t b = g.order() - 1;
  // +c(g_2..g_{n+1})
  out.push_back({tupleIndex(g, t.subspan(1)), 1});
  // (-1)^i c(.., g_i g_{i+1}, ..)
  for (std::size_t i = 0; i + 1 < k; ++i) {
    Elem p = g.mul(t[i], t[i + 1]);
    if (p == g.identity()) continue;
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) {
        idx = idx * b + g.ordinal(p);
        ++j;
      } else {
        idx = idx * b + g.ordinal(t[j]);
      }
    }
    out.push_back({idx, (i + 1) % 2 ? -1 : 1});
  }
  // (-1)^{n+1} c(g_1..g_n)
  out.push_back({tupleIndex(g, t.subspan(0, n)), (n + 1) % 2 ? -1 : 1});
}

Cochain::Cochain(GroupPtr g, unsigned n, Modulus m) : group_(std::move(g)), degree_(n), mod_(m) {
  values_.assign(cochainDim(group_->order(), n), 0);
}

Cochain::Cochain(GroupPtr g, unsigned n, Modulus m, DenseVec values)
    : group_(std::move(g)), degree_(n), mod_(m), values_(std::move(values)) {
  if (values_.size() != cochainDim(group_->order(), n)) throw std::invalid_argument("cochain value count mismatch");
  for (auto& v : values_) v = mod_.reduce(v);
}

Cochain Cochain::fromFunction(GroupPtr g, unsigned n, Modulus m,
                              const std::function<std::int64_t(std::span<const Elem>)>& f) {
  Cochain c(g, n, m);
  forEachTuple(*g, n, [&](std::uint64_t idx, std::span<const Elem> t) { c.values_[idx] = m.fromInt(f(t)); });
  return c;
}

Scalar Cochain::operator()(std::span<const Elem> args) const {
  if (args.size() != degree_) throw std::invalid_argument("cochain evaluated on a tuple of the wrong length");
  for (Elem a : args)
    if (a == group_->identity()) return 0;
  return values_[tupleIndex(*group_, args)];
}

bool Cochain::isZero() const { return exactla::isZero(values_); }

std::size_t Cochain::support() const {
  std::size_t s = 0;
  for (Scalar v : values_) s += v != 0;
  return s;
}

namespace {
void requireCompatible(const Cochain& a, const Cochain& b) {
  if (!(a.modulus() == b.modulus())) throw ModulusMismatch("cochains have different moduli");
  if (a.degree() != b.degree() || a.size() != b.size()) throw std::invalid_argument("cochains have different degrees");
}
}  // namespace

Cochain Cochain::operator+(const Cochain& o) const {
  requireCompatible(*this, o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = mod_.add(values_[i], o.values_[i]);
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
  requireCompatible(*this, o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = mod_.sub(values_[i], o.values_[i]);
  return r;
}

Cochain Cochain::scaled(std::int64_t k) const {
  Cochain r = *this;
  const Scalar kk = mod_.fromInt(k);
  for (auto& v : r.values_) v = mod_.mul(v, kk);
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  return degree_ == o.degree_ && mod_ == o.mod_ && values_ == o.values_;
}

exactla::SparseModMatrix coboundaryMatrix(const GroupPtr& g, unsigned n, Modulus m, const Budget& budget) {
  checkBudget(g->order(), n, budget);
  const std::uint64_t rows = cochainDim(g->order(), n);
  const std::uint64_t cols = cochainDim(g->order(), n + 1);
  std::vector<std::vector<exactla::Entry>> acc(rows);
  std::vector<Term> terms;
  forEachTuple(*g, n + 1, [&](std::uint64_t col, std::span<const Elem> t) {
    coboundaryTerms(*g, t, terms);
    for (const Term& term : terms) acc[term.index].push_back({static_cast<std::uint32_t>(col), m.fromInt(term.sign)});
  });
  std::vector<SparseRow> out(rows);
  for (std::uint64_t r = 0; r < rows; ++r) out[r] = exactla::canonicalRow(std::move(acc[r]), m);
  return exactla::SparseModMatrix::fromRows(cols, m, std::move(out));
}

Cochain coboundary(const Cochain& c) {
  const auto& g = *c.group();
  const Modulus& m = c.modulus();
  Cochain out(c.group(), c.degree() + 1, m);
  std::vector<Term> terms;
  forEachTuple(g, c.degree() + 1, [&](std::uint64_t idx, std::span<const Elem> t) {
    coboundaryTerms(g, t, terms);
    std::int64_t acc = 0;
    for (const Term& term : terms) acc += term.sign * static_cast<std::int64_t>(c.values()[term.index]);
    out.values()[idx] = m.fromInt(acc);
  });
  return out;
}

std::vector<std::int64_t> integralCoboundary(const FiniteGroup& g, unsigned n, const std::vector<std::int64_t>& values) {
  if (values.size() != cochainDim(g.order(), n)) throw std::invalid_argument("integral cochain size mismatch");
  std::vector<std::int64_t> out(cochainDim(g.order(), n + 1), 0);
  std::vector<Term> terms;
  forEachTuple(g, n + 1, [&](std::uint64_t idx, std::span<const Elem> t) {
    coboundaryTerms(g, t, terms);
    std::int64_t acc = 0;
    for (const Term& term : terms) acc += term.sign * values[term.index];
    out[idx] = acc;
  });
  return out;
}

bool isCocycle(const Cochain& c) { return coboundary(c).isZero(); }

}  // namespace unram::cochain
