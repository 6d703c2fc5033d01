#pragma once

#include "unram/exactla/sparse.hpp"

#include <map>

namespace unram::exactla {

// A Howell basis in natural column order: rows sorted by leading column,
// leading entries are divisors of m, entries above a leading entry are reduced
// below it, and every span vector with leading zeros lies in the span of the
// trailing rows. The form is canonical for its row span.
class HowellBasis {
 public:
  HowellBasis() = default;
  HowellBasis(Modulus mod, std::size_t dim, std::vector<SparseRow> rows);

  const Modulus& modulus() const { return mod_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const SparseRow& row(std::size_t i) const { return rows_[i]; }
  const std::vector<SparseRow>& rows() const { return rows_; }
  std::uint32_t leadCol(std::size_t i) const { return rows_[i].front().col; }
  Scalar leadVal(std::size_t i) const { return rows_[i].front().val; }
  // row index with the given leading column, or -1
  std::int64_t rowWithLead(std::uint32_t col) const;

  bool contains(const SparseRow& v) const;
  bool contains(const DenseVec& v) const;
  // Coefficients c with v = sum c_i row_i; false if v is outside the span.
  bool coordinates(const SparseRow& v, DenseVec& coeffs) const;
  bool coordinates(const DenseVec& v, DenseVec& coeffs) const;
  DenseVec combination(const DenseVec& coeffs) const;
  // Relations among the rows: (m/a_i) e_i - coords((m/a_i) row_i) for non-unit leads.
  std::vector<SparseRow> relations() const;
  // Additive orders m/a_i of the leading entries; the span has their product as order.
  std::vector<Scalar> leadOrders() const;
  SparseModMatrix toMatrix() const;

  bool operator==(const HowellBasis& o) const {
    return dim_ == o.dim_ && mod_ == o.mod_ && rows_ == o.rows_;
  }

 private:
  Modulus mod_;
  std::size_t dim_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<std::uint32_t> leadCols_;
};

// Incremental Howell construction in natural column order.
class HowellBuilder {
 public:
  HowellBuilder(Modulus mod, std::size_t dim) : mod_(mod), dim_(dim) {}

  void insert(SparseRow v);
  std::size_t size() const { return rows_.size(); }
  const std::map<std::uint32_t, SparseRow>& rows() const { return rows_; }
  // Removes and returns every stored row with a nonzero entry in column col.
  std::vector<SparseRow> extractRowsTouching(std::uint32_t col);
  // Removes and returns rows whose leading entry is 1.
  std::vector<SparseRow> extractUnitLeadRows();
  HowellBasis finish() &&;

 private:
  Modulus mod_;
  std::size_t dim_;
  std::map<std::uint32_t, SparseRow> rows_;
};

HowellBasis howellBasis(const SparseModMatrix& m);
SparseModMatrix howellForm(const SparseModMatrix& m);
// Howell basis of {y : R y = 0} for the rows R of a Howell basis (solutions as row vectors).
HowellBasis solutionSpace(const HowellBasis& r);

}  // namespace unram::exactla
