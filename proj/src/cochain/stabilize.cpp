#include "unram/cochain/stabilize.hpp"

#include <algorithm>

namespace unram::cochain {

using exactla::Entry;
using exactla::HowellBasis;
using exactla::HowellBuilder;

namespace {

HowellBasis spanOf(const Modulus& mod, std::size_t dim, const std::vector<SparseRow>& rows) {
  HowellBuilder b(mod, dim);
  for (const auto& r : rows)
    if (!r.empty()) b.insert(r);
  return std::move(b).finish();
}

std::vector<SparseRow> diagonalRelations(const CohomologyGroup& h, const Modulus& mod) {
  std::vector<SparseRow> rows;
  const auto& f = h.invariantFactors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    Scalar v = mod.reduce(f[i]);
    if (v) rows.push_back({{static_cast<std::uint32_t>(i), v}});
  }
  return rows;
}

// Classes x of H^n(G, Z/m0) with m0^k·x̃ a coboundary modulo m0^{k+1}.
std::vector<SparseRow> levelKernel(const CohomologyGroup& h, Scalar m0, unsigned k, const Budget& budget) {
  const unsigned n = h.degree();
  const std::size_t r = h.rank();
  if (n == 0 || r == 0) return {};
  std::uint64_t bigM = m0, scale = 1;
  for (unsigned i = 0; i < k; ++i) {
    bigM *= m0;
    scale *= m0;
    if (bigM > exactla::kMaxModulus)
      throw BudgetExceeded("coefficient modulus for Q/Z stabilization exceeds 2^31", bigM, exactla::kMaxModulus);
  }
  const Modulus M(static_cast<Scalar>(bigM));
  const auto bounds = exactla::rowSpace(coboundaryMatrix(h.group(), n - 1, M, budget));
  const std::size_t nf = bounds.freeCols.size();

  std::vector<SparseRow> stack;
  for (const auto& gen : h.generatorCocycles()) {
    DenseVec v(gen.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = M.reduce(std::uint64_t(gen.values()[i]) * scale);
    stack.push_back(bounds.project(exactla::sparseFromDense(v)));
  }
  for (const auto& row : bounds.residual.rows()) stack.push_back(row);
  const auto rel = exactla::kernelBasis(exactla::SparseModMatrix::fromRows(nf, M, std::move(stack)));

  const Modulus mod0(m0);
  std::vector<SparseRow> out;
  for (const auto& row : rel.rows()) {
    std::vector<Entry> e;
    for (const Entry& x : row)
      if (x.col < r) e.push_back({x.col, mod0.reduce(x.val)});
    auto c = exactla::canonicalRow(std::move(e), mod0);
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

StabilizedCohomology::StabilizedCohomology(CohomologyPtr base, Scalar m0, std::vector<SparseRow> kernelGens,
                                           unsigned steps)
    : base_(std::move(base)), m0_(m0), kernel_(std::move(kernelGens)), steps_(steps) {
  const Modulus mod(m0_);
  relations_ = diagonalRelations(*base_, mod);
  relations_.insert(relations_.end(), kernel_.begin(), kernel_.end());
  quotient_ = exactla::ModSubquotient(exactla::Submodule::whole(mod, base_->rank()), relations_);
}

std::vector<Scalar> StabilizedCohomology::project(const std::vector<Scalar>& baseCoords) const {
  if (baseCoords.size() != base_->rank()) throw std::invalid_argument("coordinate count mismatch");
  DenseVec v(baseCoords.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = baseCoords[i] % m0_;
  return quotient_.coordinates(v);
}

bool StabilizedCohomology::isZero(const std::vector<Scalar>& baseCoords) const {
  for (Scalar c : project(baseCoords))
    if (c) return false;
  return true;
}

StabilizedPtr qzStabilize(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m0) {
  if (m0 == 0 || m0 % g->exponent() != 0)
    throw std::invalid_argument("stabilization modulus must be a multiple of the group exponent");
  auto base = store.get(g, n, m0);
  const Modulus mod(m0);
  const std::size_t r = base->rank();
  const auto diag = diagonalRelations(*base, mod);
  auto withDiag = [&](const std::vector<SparseRow>& k) {
    std::vector<SparseRow> rows = diag;
    rows.insert(rows.end(), k.begin(), k.end());
    return spanOf(mod, r, rows).rows();
  };
  std::vector<SparseRow> prev;  // K_0 = 0
  auto prevSpan = withDiag(prev);
  for (unsigned k = 1;; ++k) {
    auto cur = levelKernel(*base, m0, k, store.budget());
    auto curSpan = withDiag(cur);
    if (curSpan == prevSpan && k >= 2) return std::make_shared<StabilizedCohomology>(base, m0, std::move(cur), k);
    // the chain is increasing; a level that loses a class means a bug
    for (const auto& row : prevSpan)
      if (!spanOf(mod, r, curSpan).contains(row))
        throw std::logic_error("stabilization kernels are not increasing");
    prev = std::move(cur);
    prevSpan = std::move(curSpan);
  }
}

std::uint64_t IntegralCohomology::torsionOrder() const {
  std::uint64_t o = 1;
  for (const auto& f : torsion) {
    std::uint64_t v = std::stoull(f);
    if (v && o > UINT64_MAX / v) throw std::overflow_error("torsion order overflows 64 bits");
    o *= v;
  }
  return o;
}

IntegralCohomology integralCohomology(const GroupPtr& g, unsigned n, const Budget& budget,
                                      const exactla::IntegerSmithLimits& limits) {
  IntegralCohomology out;
  if (n == 0) {
    out.freeRank = 1;
    out.rankCertified = true;
    return out;
  }
  checkBudget(g->order(), n, budget);
  const std::uint64_t dimPrev = cochainDim(g->order(), n - 1);
  const std::uint64_t dim = cochainDim(g->order(), n);
  if (dim == 0) {
    out.rankCertified = true;
    return out;
  }
  std::vector<exactla::IntRow> rows(dimPrev);
  std::vector<Term> terms;
  forEachTuple(*g, n, [&](std::uint64_t col, std::span<const Elem> t) {
    coboundaryTerms(*g, t, terms);
    for (const Term& term : terms) rows[term.index].push_back({static_cast<std::uint32_t>(col), term.sign});
  });
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.col < b.col; });
    exactla::IntRow merged;
    for (const auto& e : row) {
      if (!merged.empty() && merged.back().col == e.col)
        merged.back().val += e.val;
      else
        merged.push_back(e);
    }
    std::erase_if(merged, [](const auto& e) { return e.val == 0; });
    row = std::move(merged);
  }
  const auto snf = exactla::smithFormZ(rows, dim, limits);
  for (const auto& f : snf.factors)
    if (f != "1") out.torsion.push_back(f);

  // rank of d^n modulo a prime bounds the rational rank from below
  const Modulus p(2147483647u);
  auto dn = coboundaryMatrix(g, n, p, budget);
  exactla::RowEliminator el(p, dn.cols());
  for (const auto& row : dn.rowData()) el.addRow(row);
  auto rs = std::move(el).finish();
  const std::size_t rankP = rs.unitRank() + rs.residual.size();
  out.freeRank = dim - snf.rank - std::min<std::size_t>(rankP, dim - snf.rank);
  out.rankCertified = out.freeRank == 0;
  return out;
}

}  // namespace unram::cochain
