#pragma once

#include "unram/exactla/modular.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

namespace unram::exactla {

struct Entry {
  std::uint32_t col;
  Scalar val;
  bool operator==(const Entry&) const = default;
};

// Sorted by column, no zero values.
using SparseRow = std::vector<Entry>;
using DenseVec = std::vector<Scalar>;

Scalar valueAt(const SparseRow& row, std::uint32_t col);
// a + k*b
SparseRow combine(const SparseRow& a, Scalar k, const SparseRow& b, const Modulus& mod);
SparseRow scaled(const SparseRow& a, Scalar k, const Modulus& mod);
// Sorts, merges duplicate columns and drops zeros.
SparseRow canonicalRow(std::vector<Entry> entries, const Modulus& mod);
SparseRow sparseFromDense(const DenseVec& v);
DenseVec denseFromSparse(const SparseRow& row, std::size_t dim);
bool isZero(const DenseVec& v);

// Row-major sparse matrix over Z/m with canonical rows.
class SparseModMatrix {
 public:
  SparseModMatrix() = default;
  SparseModMatrix(std::size_t rows, std::size_t cols, Modulus mod);

  static SparseModMatrix fromTriplets(std::size_t rows, std::size_t cols, Modulus mod,
                                      const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& t);
  static SparseModMatrix fromRows(std::size_t cols, Modulus mod, std::vector<SparseRow> rows);
  static SparseModMatrix fromDense(const std::vector<std::vector<std::int64_t>>& a, Modulus mod);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Modulus& modulus() const { return mod_; }
  const SparseRow& row(std::size_t i) const { return rows_[i]; }
  const std::vector<SparseRow>& rowData() const { return rows_; }
  Scalar at(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const;

  void setRow(std::size_t i, SparseRow r);
  void appendRow(SparseRow r);

  SparseModMatrix transpose() const;
  // x * M for a row vector x of length rows()
  DenseVec leftMultiply(const DenseVec& x) const;
  SparseModMatrix multiply(const SparseModMatrix& other) const;
  std::vector<std::vector<Scalar>> toDense() const;

  bool operator==(const SparseModMatrix& o) const {
    return cols_ == o.cols_ && mod_ == o.mod_ && rows_ == o.rows_;
  }

  // "zm <rows> <cols> <m>" header followed by "r c v" lines
  void dump(std::ostream& out) const;
  static SparseModMatrix parse(std::istream& in);

 private:
  std::size_t cols_ = 0;
  Modulus mod_;
  std::vector<SparseRow> rows_;
};

}  // namespace unram::exactla
