#include "unram/exactla/howell.hpp"

#include <algorithm>
#include <stdexcept>

namespace unram::exactla {

HowellBasis::HowellBasis(Modulus mod, std::size_t dim, std::vector<SparseRow> rows)
    : mod_(mod), dim_(dim), rows_(std::move(rows)) {
  leadCols_.reserve(rows_.size());
  for (const auto& r : rows_) {
    if (r.empty()) throw std::invalid_argument("zero row in Howell basis");
    if (!leadCols_.empty() && r.front().col <= leadCols_.back())
      throw std::invalid_argument("Howell rows must have increasing leading columns");
    leadCols_.push_back(r.front().col);
  }
}

std::int64_t HowellBasis::rowWithLead(std::uint32_t col) const {
  auto it = std::lower_bound(leadCols_.begin(), leadCols_.end(), col);
  if (it == leadCols_.end() || *it != col) return -1;
  return it - leadCols_.begin();
}

bool HowellBasis::coordinates(const SparseRow& v, DenseVec& coeffs) const {
  coeffs.assign(rows_.size(), 0);
  std::map<std::uint32_t, Scalar> acc;
  for (const Entry& e : v)
    if (e.val) acc[e.col] = e.val;
  while (!acc.empty()) {
    auto it = acc.begin();
    std::uint32_t col = it->first;
    Scalar c = it->second;
    if (c == 0) {
      acc.erase(it);
      continue;
    }
    std::int64_t i = rowWithLead(col);
    if (i < 0) return false;
    Scalar a = rows_[i].front().val;
    if (c % a != 0) return false;
    Scalar q = c / a;
    coeffs[i] = q;
    Scalar nq = mod_.neg(q);
    for (const Entry& e : rows_[i]) {
      Scalar& slot = acc[e.col];
      slot = mod_.add(slot, mod_.mul(nq, e.val));
    }
    acc.erase(col);
  }
  return true;
}

bool HowellBasis::coordinates(const DenseVec& v, DenseVec& coeffs) const {
  if (v.size() != dim_) throw std::invalid_argument("dimension mismatch");
  coeffs.assign(rows_.size(), 0);
  DenseVec w = v;
  std::size_t next = 0;
  for (std::size_t col = 0; col < dim_; ++col) {
    if (w[col] == 0) continue;
    while (next < leadCols_.size() && leadCols_[next] < col) ++next;
    if (next == leadCols_.size() || leadCols_[next] != col) return false;
    Scalar a = rows_[next].front().val;
    if (w[col] % a != 0) return false;
    Scalar q = w[col] / a;
    coeffs[next] = q;
    Scalar nq = mod_.neg(q);
    for (const Entry& e : rows_[next]) w[e.col] = mod_.add(w[e.col], mod_.mul(nq, e.val));
  }
  return true;
}

bool HowellBasis::contains(const SparseRow& v) const {
  DenseVec c;
  return coordinates(v, c);
}

bool HowellBasis::contains(const DenseVec& v) const {
  DenseVec c;
  return coordinates(v, c);
}

DenseVec HowellBasis::combination(const DenseVec& coeffs) const {
  DenseVec out(dim_, 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!coeffs[i]) continue;
    for (const Entry& e : rows_[i]) out[e.col] = mod_.add(out[e.col], mod_.mul(coeffs[i], e.val));
  }
  return out;
}

std::vector<SparseRow> HowellBasis::relations() const {
  std::vector<SparseRow> rel;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar ord = mod_.additiveOrder(leadVal(i));
    if (ord == mod_.value()) continue;
    SparseRow t = scaled(rows_[i], ord, mod_);
    DenseVec c;
    if (!coordinates(t, c)) throw std::logic_error("Howell property violated");
    // ord*e_i - c
    DenseVec r(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) r[k] = mod_.neg(c[k]);
    r[i] = mod_.add(r[i], ord % mod_.value());
    rel.push_back(sparseFromDense(r));
  }
  return rel;
}

std::vector<Scalar> HowellBasis::leadOrders() const {
  std::vector<Scalar> o;
  for (std::size_t i = 0; i < rows_.size(); ++i) o.push_back(mod_.additiveOrder(leadVal(i)));
  return o;
}

SparseModMatrix HowellBasis::toMatrix() const { return SparseModMatrix::fromRows(dim_, mod_, rows_); }

void HowellBuilder::insert(SparseRow first) {
  std::vector<SparseRow> work;
  work.push_back(std::move(first));
  const Scalar m = mod_.value();
  while (!work.empty()) {
    SparseRow v = std::move(work.back());
    work.pop_back();
    while (!v.empty()) {
      std::uint32_t c = v.front().col;
      auto [g, u] = mod_.unitNormalize(v.front().val);
      if (u != 1) v = scaled(v, u, mod_);
      auto it = rows_.find(c);
      if (it == rows_.end()) {
        SparseRow ann = scaled(v, m / g, mod_);
        rows_.emplace(c, std::move(v));
        if (!ann.empty()) work.push_back(std::move(ann));
        break;
      }
      SparseRow& w = it->second;
      Scalar b = w.front().val;
      if (g % b == 0) {
        v = combine(v, mod_.neg(g / b), w, mod_);
      } else if (b % g == 0) {
        SparseRow old = std::move(w);
        w = v;
        work.push_back(scaled(w, m / g, mod_));
        v = combine(old, mod_.neg(b / g), w, mod_);
      } else {
        std::int64_t s, t;
        std::int64_t h = extendedGcd(g, b, s, t);
        SparseRow lead = combine(scaled(v, mod_.fromInt(s), mod_), mod_.fromInt(t), w, mod_);
        SparseRow rest = combine(scaled(v, static_cast<Scalar>(b / h), mod_),
                                 mod_.neg(static_cast<Scalar>(g / h)), w, mod_);
        w = std::move(lead);
        work.push_back(scaled(w, m / static_cast<Scalar>(h), mod_));
        v = std::move(rest);
      }
    }
  }
}

std::vector<SparseRow> HowellBuilder::extractRowsTouching(std::uint32_t col) {
  std::vector<SparseRow> out;
  for (auto it = rows_.begin(); it != rows_.end();) {
    if (it->first > col) break;
    if (valueAt(it->second, col) != 0) {
      out.push_back(std::move(it->second));
      it = rows_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::vector<SparseRow> HowellBuilder::extractUnitLeadRows() {
  std::vector<SparseRow> out;
  for (auto it = rows_.begin(); it != rows_.end();) {
    if (it->second.front().val == 1) {
      out.push_back(std::move(it->second));
      it = rows_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

HowellBasis HowellBuilder::finish() && {
  // reduce entries above each leading entry, working from the bottom row up
  std::vector<SparseRow> rows;
  rows.reserve(rows_.size());
  for (auto& [c, r] : rows_) rows.push_back(std::move(r));
  std::vector<std::uint32_t> leads;
  for (const auto& r : rows) leads.push_back(r.front().col);
  for (std::size_t i = rows.size(); i-- > 0;) {
    std::uint32_t pos = leads[i];
    for (;;) {
      SparseRow& ri = rows[i];
      auto it = std::upper_bound(ri.begin(), ri.end(), pos,
                                 [](std::uint32_t p, const Entry& e) { return p < e.col; });
      std::size_t j = rows.size();
      for (; it != ri.end(); ++it) {
        auto lj = std::lower_bound(leads.begin() + i + 1, leads.end(), it->col);
        if (lj != leads.end() && *lj == it->col) {
          std::size_t k = lj - leads.begin();
          if (it->val >= rows[k].front().val) {
            j = k;
            break;
          }
        }
      }
      if (j == rows.size()) break;
      Scalar q = valueAt(ri, leads[j]) / rows[j].front().val;
      pos = leads[j];
      ri = combine(ri, mod_.neg(q), rows[j], mod_);
    }
  }
  return HowellBasis(mod_, dim_, std::move(rows));
}

HowellBasis howellBasis(const SparseModMatrix& m) {
  HowellBuilder b(m.modulus(), m.cols());
  for (const auto& r : m.rowData())
    if (!r.empty()) b.insert(r);
  return std::move(b).finish();
}

SparseModMatrix howellForm(const SparseModMatrix& m) { return howellBasis(m).toMatrix(); }

HowellBasis solutionSpace(const HowellBasis& r) {
  const Modulus& mod = r.modulus();
  const std::size_t k = r.size();
  std::vector<std::uint32_t> used;
  for (const auto& row : r.rows())
    for (const Entry& e : row) used.push_back(e.col);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<std::int64_t> local(r.dim(), -1);
  for (std::size_t i = 0; i < used.size(); ++i) local[used[i]] = static_cast<std::int64_t>(i);

  // rows of [R^T | I] over the used columns
  std::vector<std::vector<Entry>> t(used.size());
  for (std::size_t i = 0; i < k; ++i)
    for (const Entry& e : r.row(i)) t[local[e.col]].push_back({static_cast<std::uint32_t>(i), e.val});
  HowellBuilder b(mod, k + used.size());
  for (std::size_t f = 0; f < used.size(); ++f) {
    t[f].push_back({static_cast<std::uint32_t>(k + f), 1});
    b.insert(std::move(t[f]));
  }
  HowellBasis h = std::move(b).finish();

  std::map<std::uint32_t, SparseRow> out;
  for (const auto& row : h.rows()) {
    if (row.front().col < k) continue;
    SparseRow y;
    for (const Entry& e : row) y.push_back({used[e.col - k], e.val});
    out.emplace(y.front().col, std::move(y));
  }
  for (std::uint32_t c = 0; c < r.dim(); ++c)
    if (local[c] < 0) out.emplace(c, SparseRow{{c, 1}});
  std::vector<SparseRow> rows;
  for (auto& [c, y] : out) rows.push_back(std::move(y));
  return HowellBasis(mod, r.dim(), std::move(rows));
}

}  // namespace unram::exactla
