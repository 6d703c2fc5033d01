#pragma once

#include "unram/exactla/eliminator.hpp"
#include "unram/exactla/smith.hpp"

#include <iosfwd>
#include <memory>
#include <stdexcept>

namespace unram::exactla {

class NotASubmodule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotInNumerator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A submodule K ⊆ (Z/m)^dim together with a set of coordinate columns on which
// the projection K → (Z/m)^coords is injective, and a Howell basis of the
// projected module. Two constructions: spanned by explicit rows, or the
// solution set of a system of equations (kernel).
class Submodule {
 public:
  Submodule() = default;
  static Submodule spannedBy(Modulus mod, std::size_t dim, const std::vector<SparseRow>& rows);
  static Submodule spannedBy(const SparseModMatrix& rows);
  // {x : e·x = 0 for every row e of the eliminated system}
  static Submodule solutionsOf(const RowSpace& equations);
  static Submodule whole(Modulus mod, std::size_t dim);

  const Modulus& modulus() const { return mod_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::uint32_t>& coordCols() const { return coordCols_; }
  const HowellBasis& coordBasis() const { return coordBasis_; }

  DenseVec restrict(const DenseVec& v) const;
  SparseRow restrict(const SparseRow& v) const;
  // The unique element of K projecting to y (y must lie in the projected module).
  DenseVec lift(const DenseVec& y) const;
  bool contains(const DenseVec& v) const;
  bool contains(const SparseRow& v) const;
  // Lifted basis rows, re-normalized to the natural-order Howell form.
  HowellBasis naturalBasis() const;

  void write(std::ostream& out) const;
  static Submodule read(std::istream& in);

 private:
  void indexPivots();
  bool solutionsContain(const SparseRow& v) const;

  enum class Kind : std::uint8_t { Span, Solutions };
  Kind kind_ = Kind::Span;
  Modulus mod_;
  std::size_t dim_ = 0;
  std::vector<std::uint32_t> coordCols_;
  HowellBasis coordBasis_;
  HowellBasis span_;                      // Span: natural Howell basis of K
  std::vector<std::uint32_t> pivotCols_;  // Solutions: x_c = -a_c·x_free
  std::vector<SparseRow> pivotRows_;
  // Solutions: pivot rows transposed (free coordinate -> (pivot slot, value))
  // and column -> pivot slot, for membership tests proportional to support
  std::vector<SparseRow> pivotsByFree_;
  std::vector<std::int32_t> slotOfCol_;
};

// K/B for B ⊆ K with invariant factors, generator lifts and a coordinate solver.
class ModSubquotient {
 public:
  ModSubquotient() = default;
  ModSubquotient(Submodule numerator, const std::vector<SparseRow>& denominatorGens);

  const Modulus& modulus() const { return num_.modulus(); }
  std::size_t ambientDim() const { return num_.dim(); }
  const Submodule& numerator() const { return num_; }
  const std::vector<Scalar>& invariantFactors() const { return factors_; }
  const std::vector<DenseVec>& generatorLifts() const { return lifts_; }
  // product of the invariant factors (saturates at UINT64_MAX)
  std::uint64_t order() const;

  // Coordinates of v ∈ K, entry i reduced mod invariantFactors()[i].
  std::vector<Scalar> coordinates(const DenseVec& v) const;
  std::vector<Scalar> coordinates(const SparseRow& v) const;
  // Howell basis of the denominator (computed on demand)
  HowellBasis denominatorBasis() const;
  const std::vector<SparseRow>& denominatorGenerators() const { return den_; }

  void write(std::ostream& out) const;
  static ModSubquotient read(std::istream& in);

 private:
  std::vector<Scalar> coordsFromProjected(const DenseVec& y) const;
  void build();

  Submodule num_;
  std::vector<SparseRow> den_;
  RowSpace rel_;                          // relations among coordBasis rows
  std::vector<std::uint32_t> blockCols_;  // free relation coordinates entering the Smith block
  std::vector<std::int32_t> blockIndex_;  // free coordinate -> block index or -1
  std::vector<std::vector<Scalar>> v_;    // block transform
  // per invariant factor: free coordinate (>= 0) or block index encoded as -(i+1)
  std::vector<std::int64_t> source_;
  std::vector<Scalar> factors_;
  std::vector<DenseVec> lifts_;
};

// Howell basis of {x : xM = 0} (row-vector convention).
HowellBasis kernelBasis(const SparseModMatrix& m);
SparseModMatrix kernel(const SparseModMatrix& m);

ModSubquotient subquotient(const SparseModMatrix& k, const SparseModMatrix& b);

}  // namespace unram::exactla
