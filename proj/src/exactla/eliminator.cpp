#include "unram/exactla/eliminator.hpp"

#include <algorithm>

namespace unram::exactla {

DenseVec RowSpace::project(const DenseVec& v) const {
  DenseVec out(freeCols.size(), 0);
  for (std::size_t f = 0; f < freeCols.size(); ++f) out[f] = v[freeCols[f]];
  for (std::size_t s = 0; s < pivotCols.size(); ++s) {
    Scalar k = v[pivotCols[s]];
    if (!k) continue;
    Scalar nk = mod.neg(k);
    for (const Entry& e : pivotRows[s]) out[e.col] = mod.add(out[e.col], mod.mul(nk, e.val));
  }
  return out;
}

SparseRow RowSpace::project(const SparseRow& v) const {
  SparseRow acc;
  std::vector<Entry> direct;
  for (const Entry& e : v) {
    if (freeIndex[e.col] >= 0) {
      direct.push_back({static_cast<std::uint32_t>(freeIndex[e.col]), e.val});
    } else {
      acc = combine(acc, mod.neg(e.val), pivotRows[pivotSlot[e.col]], mod);
    }
  }
  return combine(acc, 1, canonicalRow(std::move(direct), mod), mod);
}

RowEliminator::RowEliminator(Modulus mod, std::size_t dim)
    : mod_(mod), dim_(dim), slotOf_(dim, -1), users_(dim), count_(dim, 0),
      residual_(mod, dim), acc_(dim, 0), mark_(dim, 0) {}

std::size_t RowEliminator::storedNonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rowOfSlot_) n += r.size();
  return n;
}

SparseRow RowEliminator::reduce(std::span<const Entry> entries) {
  const std::uint64_t m = mod_.value();
  for (const Entry& e : entries) {
    if (!mark_[e.col]) {
      mark_[e.col] = 1;
      touched_.push_back(e.col);
      acc_[e.col] = 0;
    }
    acc_[e.col] = (acc_[e.col] + e.val) % m;
  }
  for (std::size_t i = 0; i < touched_.size(); ++i) {
    std::uint32_t c = touched_[i];
    std::int32_t slot = slotOf_[c];
    if (slot < 0) continue;
    std::uint64_t k = acc_[c] % m;
    acc_[c] = 0;
    if (!k) continue;
    std::uint64_t nk = m - k;
    for (const Entry& e : rowOfSlot_[slot]) {
      if (!mark_[e.col]) {
        mark_[e.col] = 1;
        touched_.push_back(e.col);
        acc_[e.col] = 0;
      }
      acc_[e.col] = (acc_[e.col] + nk * e.val) % m;
    }
  }
  SparseRow out;
  for (std::uint32_t c : touched_) {
    if (slotOf_[c] < 0) {
      Scalar v = static_cast<Scalar>(acc_[c] % m);
      if (v) out.push_back({c, v});
    }
    mark_[c] = 0;
    acc_[c] = 0;
  }
  touched_.clear();
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  return out;
}

void RowEliminator::addEntries(std::span<const Entry> entries) {
  pending_.push_back(reduce(entries));
  while (!pending_.empty()) {
    SparseRow r = std::move(pending_.back());
    pending_.pop_back();
    process(std::move(r));
  }
}

void RowEliminator::process(SparseRow row) {
  if (row.empty()) return;
  // rows coming back from the residual may mention newer pivots
  for (const Entry& e : row) {
    if (slotOf_[e.col] >= 0) {
      row = reduce(row);
      break;
    }
  }
  if (row.empty()) return;
  std::int64_t best = -1;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!mod_.isUnit(row[i].val)) continue;
    if (best < 0 || count_[row[i].col] <= count_[row[best].col]) best = static_cast<std::int64_t>(i);
  }
  if (best >= 0) {
    std::uint32_t col = row[best].col;
    makePivot(std::move(row), col);
    return;
  }
  residual_.insert(std::move(row));
  for (auto& u : residual_.extractUnitLeadRows()) pending_.push_back(std::move(u));
}

void RowEliminator::makePivot(SparseRow row, std::uint32_t col) {
  Scalar inv = mod_.inverse(valueAt(row, col));
  if (inv != 1) row = scaled(row, inv, mod_);
  const std::uint32_t slot = static_cast<std::uint32_t>(colOfSlot_.size());
  ++epoch_;
  stamp_.push_back(0);

  auto& users = users_[col];
  for (std::uint32_t p : users) {
    if (stamp_[p] == epoch_) continue;
    stamp_[p] = epoch_;
    SparseRow& old = rowOfSlot_[p];
    Scalar k = valueAt(old, col);
    if (!k) continue;
    SparseRow updated = combine(old, mod_.neg(k), row, mod_);
    std::size_t i = 0, j = 0;
    while (i < old.size() || j < updated.size()) {
      if (j == updated.size() || (i < old.size() && old[i].col < updated[j].col)) {
        --count_[old[i].col];
        ++i;
      } else if (i == old.size() || updated[j].col < old[i].col) {
        users_[updated[j].col].push_back(p);
        ++count_[updated[j].col];
        ++j;
      } else {
        ++i;
        ++j;
      }
    }
    old = std::move(updated);
  }
  std::vector<std::uint32_t>().swap(users);
  count_[col] = 0;

  SparseRow tail;
  tail.reserve(row.size() - 1);
  for (const Entry& e : row) {
    if (e.col == col) continue;
    tail.push_back(e);
    users_[e.col].push_back(slot);
    ++count_[e.col];
  }
  slotOf_[col] = static_cast<std::int32_t>(slot);
  colOfSlot_.push_back(col);
  rowOfSlot_.push_back(std::move(tail));

  if (residual_.size()) {
    for (auto& w : residual_.extractRowsTouching(col)) {
      Scalar k = valueAt(w, col);
      pending_.push_back(combine(w, mod_.neg(k), row, mod_));
    }
  }
}

RowSpace RowEliminator::finish() && {
  RowSpace rs;
  rs.mod = mod_;
  rs.dim = dim_;
  rs.freeIndex.assign(dim_, -1);
  rs.pivotSlot.assign(dim_, -1);
  for (std::uint32_t c = 0; c < dim_; ++c) {
    if (slotOf_[c] < 0) {
      rs.freeIndex[c] = static_cast<std::int32_t>(rs.freeCols.size());
      rs.freeCols.push_back(c);
    } else {
      rs.pivotSlot[c] = static_cast<std::int32_t>(rs.pivotCols.size());
      rs.pivotCols.push_back(c);
    }
  }
  rs.pivotRows.reserve(rs.pivotCols.size());
  for (std::uint32_t c : rs.pivotCols) {
    SparseRow r = std::move(rowOfSlot_[slotOf_[c]]);
    for (Entry& e : r) e.col = static_cast<std::uint32_t>(rs.freeIndex[e.col]);
    rs.pivotRows.push_back(std::move(r));
  }
  HowellBasis res = std::move(residual_).finish();
  std::vector<SparseRow> rows = res.rows();
  for (auto& r : rows)
    for (Entry& e : r) e.col = static_cast<std::uint32_t>(rs.freeIndex[e.col]);
  rs.residual = HowellBasis(mod_, rs.freeCols.size(), std::move(rows));
  return rs;
}

RowSpace rowSpace(const SparseModMatrix& m) {
  RowEliminator el(m.modulus(), m.cols());
  for (const auto& r : m.rowData()) el.addRow(r);
  return std::move(el).finish();
}

}  // namespace unram::exactla
