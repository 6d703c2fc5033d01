#include "unram/exactla/sparse.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace unram::exactla {

Scalar valueAt(const SparseRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const Entry& e, std::uint32_t c) { return e.col < c; });
  return (it != row.end() && it->col == col) ? it->val : 0;
}

SparseRow combine(const SparseRow& a, Scalar k, const SparseRow& b, const Modulus& mod) {
  k = mod.reduce(k);
  if (k == 0) return a;
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      Scalar v = mod.mul(k, b[j].val);
      if (v) out.push_back({b[j].col, v});
      ++j;
    } else {
      Scalar v = mod.add(a[i].val, mod.mul(k, b[j].val));
      if (v) out.push_back({a[i].col, v});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseRow scaled(const SparseRow& a, Scalar k, const Modulus& mod) {
  SparseRow out;
  out.reserve(a.size());
  for (const Entry& e : a) {
    Scalar v = mod.mul(k, e.val);
    if (v) out.push_back({e.col, v});
  }
  return out;
}

SparseRow canonicalRow(std::vector<Entry> entries, const Modulus& mod) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.col < y.col; });
  SparseRow out;
  for (const Entry& e : entries) {
    Scalar v = mod.reduce(e.val);
    if (!out.empty() && out.back().col == e.col) {
      out.back().val = mod.add(out.back().val, v);
      if (out.back().val == 0) out.pop_back();
    } else if (v) {
      out.push_back({e.col, v});
    }
  }
  return out;
}

SparseRow sparseFromDense(const DenseVec& v) {
  SparseRow out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) out.push_back({static_cast<std::uint32_t>(i), v[i]});
  return out;
}

DenseVec denseFromSparse(const SparseRow& row, std::size_t dim) {
  DenseVec v(dim, 0);
  for (const Entry& e : row) v[e.col] = e.val;
  return v;
}

bool isZero(const DenseVec& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

SparseModMatrix::SparseModMatrix(std::size_t rows, std::size_t cols, Modulus mod)
    : cols_(cols), mod_(mod), rows_(rows) {}

SparseModMatrix SparseModMatrix::fromTriplets(
    std::size_t rows, std::size_t cols, Modulus mod,
    const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& t) {
  std::vector<std::vector<Entry>> buckets(rows);
  for (auto [r, c, v] : t) {
    if (r >= rows || c >= cols) throw std::out_of_range("triplet outside matrix bounds");
    buckets[r].push_back({static_cast<std::uint32_t>(c), mod.fromInt(v)});
  }
  SparseModMatrix m(rows, cols, mod);
  for (std::size_t r = 0; r < rows; ++r) m.rows_[r] = canonicalRow(std::move(buckets[r]), mod);
  return m;
}

SparseModMatrix SparseModMatrix::fromRows(std::size_t cols, Modulus mod, std::vector<SparseRow> rows) {
  SparseModMatrix m(0, cols, mod);
  for (auto& r : rows) m.appendRow(std::move(r));
  return m;
}

SparseModMatrix SparseModMatrix::fromDense(const std::vector<std::vector<std::int64_t>>& a, Modulus mod) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  SparseModMatrix m(a.size(), cols, mod);
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<Entry> e;
    for (std::size_t c = 0; c < a[r].size(); ++c)
      e.push_back({static_cast<std::uint32_t>(c), mod.fromInt(a[r][c])});
    m.rows_[r] = canonicalRow(std::move(e), mod);
  }
  return m;
}

Scalar SparseModMatrix::at(std::size_t r, std::size_t c) const {
  return valueAt(rows_.at(r), static_cast<std::uint32_t>(c));
}

std::size_t SparseModMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void SparseModMatrix::setRow(std::size_t i, SparseRow r) {
  if (!r.empty() && r.back().col >= cols_) throw std::out_of_range("row entry outside matrix");
  rows_.at(i) = std::move(r);
}

void SparseModMatrix::appendRow(SparseRow r) {
  if (!r.empty() && r.back().col >= cols_) throw std::out_of_range("row entry outside matrix");
  rows_.push_back(std::move(r));
}

SparseModMatrix SparseModMatrix::transpose() const {
  SparseModMatrix t(cols_, rows_.size(), mod_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const Entry& e : rows_[r]) t.rows_[e.col].push_back({static_cast<std::uint32_t>(r), e.val});
  return t;
}

DenseVec SparseModMatrix::leftMultiply(const DenseVec& x) const {
  if (x.size() != rows_.size()) throw std::invalid_argument("dimension mismatch in leftMultiply");
  std::vector<std::uint64_t> acc(cols_, 0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!x[r]) continue;
    for (const Entry& e : rows_[r]) acc[e.col] = (acc[e.col] + std::uint64_t(x[r]) * e.val) % mod_.value();
  }
  return DenseVec(acc.begin(), acc.end());
}

SparseModMatrix SparseModMatrix::multiply(const SparseModMatrix& other) const {
  if (cols_ != other.rows()) throw std::invalid_argument("dimension mismatch in multiply");
  SparseModMatrix out(rows_.size(), other.cols(), mod_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    SparseRow acc;
    for (const Entry& e : rows_[r]) acc = combine(acc, e.val, other.row(e.col), mod_);
    out.rows_[r] = std::move(acc);
  }
  return out;
}

std::vector<std::vector<Scalar>> SparseModMatrix::toDense() const {
  std::vector<std::vector<Scalar>> d(rows_.size(), std::vector<Scalar>(cols_, 0));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const Entry& e : rows_[r]) d[r][e.col] = e.val;
  return d;
}

void SparseModMatrix::dump(std::ostream& out) const {
  out << "zm " << rows_.size() << ' ' << cols_ << ' ' << mod_.value() << '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const Entry& e : rows_[r]) out << r << ' ' << e.col << ' ' << e.val << '\n';
}

SparseModMatrix SparseModMatrix::parse(std::istream& in) {
  std::string tag;
  std::size_t rows, cols;
  std::uint64_t m;
  if (!(in >> tag >> rows >> cols >> m) || tag != "zm")
    throw std::runtime_error("matrix dump: expected header 'zm <rows> <cols> <m>'");
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t;
  std::size_t r, c;
  std::int64_t v;
  while (in >> r >> c >> v) t.emplace_back(r, c, v);
  return fromTriplets(rows, cols, Modulus(m), t);
}

}  // namespace unram::exactla
