#include "unram/exactla/subquotient.hpp"

#include "unram/exactla/binio.hpp"

#include <algorithm>
#include <limits>

namespace unram::exactla {

Submodule Submodule::spannedBy(Modulus mod, std::size_t dim, const std::vector<SparseRow>& rows) {
  HowellBuilder b(mod, dim);
  for (const auto& r : rows)
    if (!r.empty()) b.insert(r);
  Submodule s;
  s.kind_ = Kind::Span;
  s.mod_ = mod;
  s.dim_ = dim;
  s.span_ = std::move(b).finish();
  std::vector<std::int64_t> local(dim, -1);
  for (std::size_t i = 0; i < s.span_.size(); ++i) {
    local[s.span_.leadCol(i)] = static_cast<std::int64_t>(i);
    s.coordCols_.push_back(s.span_.leadCol(i));
  }
  std::vector<SparseRow> proj;
  for (const auto& r : s.span_.rows()) {
    SparseRow p;
    for (const Entry& e : r)
      if (local[e.col] >= 0) p.push_back({static_cast<std::uint32_t>(local[e.col]), e.val});
    proj.push_back(std::move(p));
  }
  s.coordBasis_ = HowellBasis(mod, s.coordCols_.size(), std::move(proj));
  return s;
}

Submodule Submodule::spannedBy(const SparseModMatrix& rows) {
  return spannedBy(rows.modulus(), rows.cols(), rows.rowData());
}

Submodule Submodule::solutionsOf(const RowSpace& eq) {
  Submodule s;
  s.kind_ = Kind::Solutions;
  s.mod_ = eq.mod;
  s.dim_ = eq.dim;
  s.coordCols_ = eq.freeCols;
  s.coordBasis_ = solutionSpace(eq.residual);
  s.pivotCols_ = eq.pivotCols;
  s.pivotRows_ = eq.pivotRows;
  s.indexPivots();
  return s;
}

void Submodule::indexPivots() {
  pivotsByFree_.assign(coordCols_.size(), {});
  slotOfCol_.assign(dim_, -1);
  for (std::size_t s = 0; s < pivotRows_.size(); ++s) {
    slotOfCol_[pivotCols_[s]] = static_cast<std::int32_t>(s);
    for (const Entry& e : pivotRows_[s]) pivotsByFree_[e.col].push_back({static_cast<std::uint32_t>(s), e.val});
  }
}

// v ∈ K iff its free part lies in the projected module and every pivot value
// equals -a_c·(free part). Only pivots touched by the support of v are visited.
bool Submodule::solutionsContain(const SparseRow& v) const {
  const SparseRow y = restrict(v);
  if (!coordBasis_.contains(y)) return false;
  const std::size_t np = pivotCols_.size();
  std::vector<std::uint64_t> acc(np, 0);
  std::vector<Scalar> actual(np, 0);
  std::vector<char> seen(np, 0);
  std::vector<std::uint32_t> slots;
  for (const Entry& e : y)
    for (const Entry& p : pivotsByFree_[e.col]) {
      if (!seen[p.col]) {
        seen[p.col] = 1;
        slots.push_back(p.col);
      }
      acc[p.col] = (acc[p.col] + std::uint64_t(p.val) * e.val) % mod_.value();
    }
  for (const Entry& e : v) {
    const std::int32_t s = slotOfCol_[e.col];
    if (s < 0) continue;
    actual[s] = e.val;
    if (!seen[s]) {
      seen[s] = 1;
      slots.push_back(static_cast<std::uint32_t>(s));
    }
  }
  for (std::uint32_t s : slots)
    if (actual[s] != mod_.neg(static_cast<Scalar>(acc[s]))) return false;
  return true;
}

Submodule Submodule::whole(Modulus mod, std::size_t dim) {
  return solutionsOf(RowEliminator(mod, dim).finish());
}

DenseVec Submodule::restrict(const DenseVec& v) const {
  DenseVec y(coordCols_.size());
  for (std::size_t i = 0; i < coordCols_.size(); ++i) y[i] = v[coordCols_[i]];
  return y;
}

SparseRow Submodule::restrict(const SparseRow& v) const {
  SparseRow y;
  std::size_t k = 0;
  for (const Entry& e : v) {
    while (k < coordCols_.size() && coordCols_[k] < e.col) ++k;
    if (k < coordCols_.size() && coordCols_[k] == e.col) y.push_back({static_cast<std::uint32_t>(k), e.val});
  }
  return y;
}

DenseVec Submodule::lift(const DenseVec& y) const {
  DenseVec v(dim_, 0);
  if (kind_ == Kind::Span) {
    DenseVec c;
    if (!coordBasis_.coordinates(y, c)) throw NotInNumerator("lift of a vector outside the projected module");
    for (std::size_t i = 0; i < span_.size(); ++i) {
      if (!c[i]) continue;
      for (const Entry& e : span_.row(i)) v[e.col] = mod_.add(v[e.col], mod_.mul(c[i], e.val));
    }
    return v;
  }
  for (std::size_t i = 0; i < coordCols_.size(); ++i) v[coordCols_[i]] = y[i];
  for (std::size_t s = 0; s < pivotCols_.size(); ++s) {
    std::uint64_t acc = 0;
    for (const Entry& e : pivotRows_[s]) acc += std::uint64_t(e.val) * y[e.col] % mod_.value();
    v[pivotCols_[s]] = mod_.neg(mod_.reduce(acc));
  }
  return v;
}

bool Submodule::contains(const DenseVec& v) const {
  if (v.size() != dim_) throw std::invalid_argument("dimension mismatch");
  if (kind_ == Kind::Span) return span_.contains(v);
  return solutionsContain(sparseFromDense(v));
}

bool Submodule::contains(const SparseRow& v) const {
  if (kind_ == Kind::Span) return span_.contains(v);
  for (const Entry& e : v)
    if (e.col >= dim_) throw std::invalid_argument("dimension mismatch");
  return solutionsContain(v);
}

HowellBasis Submodule::naturalBasis() const {
  if (kind_ == Kind::Span) return span_;
  HowellBuilder b(mod_, dim_);
  for (std::size_t i = 0; i < coordBasis_.size(); ++i) {
    DenseVec y = denseFromSparse(coordBasis_.row(i), coordCols_.size());
    b.insert(sparseFromDense(lift(y)));
  }
  return std::move(b).finish();
}

void Submodule::write(std::ostream& out) const {
  binio::put<std::uint8_t>(out, static_cast<std::uint8_t>(kind_));
  binio::put<std::uint32_t>(out, mod_.value());
  binio::put<std::uint64_t>(out, dim_);
  binio::putVec(out, coordCols_);
  binio::putBasis(out, coordBasis_);
  binio::putBasis(out, span_);
  binio::putVec(out, pivotCols_);
  binio::putRows(out, pivotRows_);
}

Submodule Submodule::read(std::istream& in) {
  Submodule s;
  auto kind = binio::get<std::uint8_t>(in);
  if (kind > 1) throw binio::FormatError("unknown submodule kind");
  s.kind_ = static_cast<Kind>(kind);
  s.mod_ = Modulus(binio::get<std::uint32_t>(in));
  s.dim_ = binio::get<std::uint64_t>(in);
  s.coordCols_ = binio::getVec<std::uint32_t>(in);
  s.coordBasis_ = binio::getBasis(in);
  s.span_ = binio::getBasis(in);
  s.pivotCols_ = binio::getVec<std::uint32_t>(in);
  s.pivotRows_ = binio::getRows(in);
  if (s.coordBasis_.dim() != s.coordCols_.size() || s.pivotCols_.size() != s.pivotRows_.size())
    throw binio::FormatError("inconsistent submodule record");
  for (auto c : s.coordCols_)
    if (c >= s.dim_) throw binio::FormatError("coordinate column out of range");
  for (auto c : s.pivotCols_)
    if (c >= s.dim_) throw binio::FormatError("pivot column out of range");
  for (const auto& r : s.pivotRows_)
    for (const Entry& e : r)
      if (e.col >= s.coordCols_.size()) throw binio::FormatError("pivot row entry out of range");
  if (s.kind_ == Kind::Solutions) s.indexPivots();
  return s;
}

ModSubquotient::ModSubquotient(Submodule numerator, const std::vector<SparseRow>& den)
    : num_(std::move(numerator)), den_(den) {
  build();
}

void ModSubquotient::build() {
  const Modulus& mod = num_.modulus();
  const HowellBasis& s = num_.coordBasis();
  const std::size_t r = s.size();
  RowEliminator el(mod, r);
  for (const auto& rel : s.relations()) el.addRow(rel);
  DenseVec t;
  for (const auto& b : den_) {
    if (!num_.contains(b)) throw NotASubmodule("denominator generator lies outside the numerator");
    if (!s.coordinates(num_.restrict(b), t)) throw NotASubmodule("denominator generator not in projected module");
    el.addRow(sparseFromDense(t));
  }
  rel_ = std::move(el).finish();

  const std::size_t nf = rel_.freeCols.size();
  blockIndex_.assign(nf, -1);
  blockCols_.clear();
  for (const auto& row : rel_.residual.rows())
    for (const Entry& e : row) blockCols_.push_back(e.col);
  std::sort(blockCols_.begin(), blockCols_.end());
  blockCols_.erase(std::unique(blockCols_.begin(), blockCols_.end()), blockCols_.end());
  for (std::size_t i = 0; i < blockCols_.size(); ++i) blockIndex_[blockCols_[i]] = static_cast<std::int32_t>(i);

  std::vector<std::vector<Scalar>> dense;
  for (const auto& row : rel_.residual.rows()) {
    std::vector<Scalar> d(blockCols_.size(), 0);
    for (const Entry& e : row) d[blockIndex_[e.col]] = e.val;
    dense.push_back(std::move(d));
  }
  ModSmith sm = smithModM(std::move(dense), blockCols_.size(), mod);
  v_ = std::move(sm.v);

  factors_.clear();
  source_.clear();
  lifts_.clear();
  auto emitLift = [&](const DenseVec& w) {
    DenseVec tt(r, 0);
    for (std::size_t f = 0; f < nf; ++f) tt[rel_.freeCols[f]] = w[f];
    lifts_.push_back(num_.lift(s.combination(tt)));
  };
  for (std::size_t i = 0; i < blockCols_.size(); ++i) {
    if (sm.diag[i] == 1) continue;
    factors_.push_back(sm.diag[i]);
    source_.push_back(-static_cast<std::int64_t>(i) - 1);
    DenseVec w(nf, 0);
    for (std::size_t k = 0; k < blockCols_.size(); ++k) w[blockCols_[k]] = sm.vInv[i][k];
    emitLift(w);
  }
  for (std::size_t f = 0; f < nf; ++f) {
    if (blockIndex_[f] >= 0 || mod.value() == 1) continue;
    factors_.push_back(mod.value());
    source_.push_back(static_cast<std::int64_t>(f));
    DenseVec w(nf, 0);
    w[f] = 1;
    emitLift(w);
  }
}

std::uint64_t ModSubquotient::order() const {
  std::uint64_t o = 1;
  for (Scalar d : factors_) {
    if (o > std::numeric_limits<std::uint64_t>::max() / d) return std::numeric_limits<std::uint64_t>::max();
    o *= d;
  }
  return o;
}

std::vector<Scalar> ModSubquotient::coordsFromProjected(const DenseVec& y) const {
  const Modulus& mod = num_.modulus();
  DenseVec t;
  if (!num_.coordBasis().coordinates(y, t)) throw NotInNumerator("vector outside the numerator");
  DenseVec w = rel_.project(t);
  std::vector<Scalar> z(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::int64_t src = source_[i];
    std::uint64_t val;
    if (src >= 0) {
      val = w[src];
    } else {
      std::size_t col = static_cast<std::size_t>(-src - 1);
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < blockCols_.size(); ++k)
        acc = (acc + std::uint64_t(w[blockCols_[k]]) * v_[k][col]) % mod.value();
      val = acc;
    }
    z[i] = static_cast<Scalar>(val % factors_[i]);
  }
  return z;
}

std::vector<Scalar> ModSubquotient::coordinates(const DenseVec& v) const {
  if (!num_.contains(v)) throw NotInNumerator("vector outside the numerator");
  return coordsFromProjected(num_.restrict(v));
}

std::vector<Scalar> ModSubquotient::coordinates(const SparseRow& v) const {
  if (!num_.contains(v)) throw NotInNumerator("vector outside the numerator");
  return coordsFromProjected(denseFromSparse(num_.restrict(v), num_.coordCols().size()));
}

HowellBasis ModSubquotient::denominatorBasis() const {
  HowellBuilder b(num_.modulus(), num_.dim());
  for (const auto& r : den_)
    if (!r.empty()) b.insert(r);
  return std::move(b).finish();
}

void ModSubquotient::write(std::ostream& out) const {
  num_.write(out);
  binio::putRows(out, den_);
}

ModSubquotient ModSubquotient::read(std::istream& in) {
  Submodule num = Submodule::read(in);
  auto den = binio::getRows(in);
  for (const auto& r : den)
    for (const Entry& e : r)
      if (e.col >= num.dim()) throw binio::FormatError("denominator entry out of range");
  return ModSubquotient(std::move(num), den);
}

HowellBasis kernelBasis(const SparseModMatrix& m) {
  return Submodule::solutionsOf(rowSpace(m.transpose())).naturalBasis();
}

SparseModMatrix kernel(const SparseModMatrix& m) { return kernelBasis(m).toMatrix(); }

ModSubquotient subquotient(const SparseModMatrix& k, const SparseModMatrix& b) {
  if (k.cols() != b.cols() || !(k.modulus() == b.modulus()))
    throw std::invalid_argument("subquotient: ambient dimension or modulus mismatch");
  return ModSubquotient(Submodule::spannedBy(k), b.rowData());
}

}  // namespace unram::exactla
