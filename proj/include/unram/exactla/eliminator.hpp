#pragma once

#include "unram/exactla/howell.hpp"

#include <span>

namespace unram::exactla {

// Decomposition of a row span S ⊆ (Z/m)^dim produced by RowEliminator:
//   S = span{ e_c + a_c : c pivot } + span(residual),
// where every a_c and every residual row is supported on the free columns.
// Free coordinates are indexed 0..freeCols.size()-1 in ascending column order.
struct RowSpace {
  Modulus mod;
  std::size_t dim = 0;
  std::vector<std::uint32_t> pivotCols;  // ascending
  std::vector<SparseRow> pivotRows;      // a_c in free coordinates
  std::vector<std::uint32_t> freeCols;   // ascending
  std::vector<std::int32_t> pivotSlot;   // column -> index into pivotCols, or -1
  std::vector<std::int32_t> freeIndex;   // column -> free coordinate, or -1
  HowellBasis residual;                  // in free coordinates

  // Image of v in (Z/m)^dim / span{e_c + a_c}, identified with free coordinates.
  DenseVec project(const DenseVec& v) const;
  SparseRow project(const SparseRow& v) const;
  bool contains(const DenseVec& v) const { return residual.contains(project(v)); }
  bool contains(const SparseRow& v) const { return residual.contains(project(v)); }
  std::size_t unitRank() const { return pivotCols.size(); }
  // Order of the quotient (Z/m)^dim / S as a list of cyclic orders (m for each
  // free column, divided down by the residual).
};

// Streaming elimination over Z/m. Rows are reduced against unit pivots as
// they arrive; rows without a unit entry go to a Howell residual. Pivots are
// chosen among unit entries by smallest column usage, then largest column.
class RowEliminator {
 public:
  RowEliminator(Modulus mod, std::size_t dim);

  // Entries may be unsorted and repeat columns; values are reduced mod m.
  void addEntries(std::span<const Entry> entries);
  void addRow(const SparseRow& row) { addEntries(row); }
  std::size_t unitPivots() const { return colOfSlot_.size(); }
  std::size_t residualRows() const { return residual_.size(); }
  std::size_t storedNonzeros() const;
  RowSpace finish() &&;

 private:
  SparseRow reduce(std::span<const Entry> entries);
  void process(SparseRow row);
  void makePivot(SparseRow row, std::uint32_t col);

  Modulus mod_;
  std::size_t dim_;
  std::vector<std::int32_t> slotOf_;
  std::vector<std::uint32_t> colOfSlot_;
  std::vector<SparseRow> rowOfSlot_;
  std::vector<std::vector<std::uint32_t>> users_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  HowellBuilder residual_;
  std::vector<SparseRow> pending_;
  std::vector<std::uint64_t> acc_;
  std::vector<std::uint32_t> touched_;
  std::vector<char> mark_;
};

// Row span decomposition of a matrix.
RowSpace rowSpace(const SparseModMatrix& m);

}  // namespace unram::exactla
