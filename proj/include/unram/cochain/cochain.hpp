#pragma once

#include "unram/exactla/sparse.hpp"
#include "unram/groups/group.hpp"

#include <functional>
#include <span>
#include <stdexcept>

namespace unram::cochain {

using exactla::DenseVec;
using exactla::Modulus;
using exactla::Scalar;
using exactla::SparseRow;
using groups::Elem;
using groups::GroupPtr;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t allowed);
  std::uint64_t required, allowed;
};
class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotACocycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Size limits checked before any allocation proportional to the cochain spaces.
struct Budget {
  std::uint64_t maxUnknowns = 60'000;     // dim C^n
  std::uint64_t maxEquations = 3'000'000; // dim C^{n+1}
};

// (N-1)^n, saturating
std::uint64_t cochainDim(std::size_t groupOrder, unsigned n);
void checkBudget(std::size_t groupOrder, unsigned n, const Budget& budget);

// Normalized n-cochain: one value per n-tuple of non-identity elements, stored
// densely. The tuple (a_1..a_n) sits at Σ ord(a_i)(N-1)^{n-i}.
class Cochain {
 public:
  Cochain() = default;
  Cochain(GroupPtr g, unsigned n, Modulus m);
  Cochain(GroupPtr g, unsigned n, Modulus m, DenseVec values);
  static Cochain fromFunction(GroupPtr g, unsigned n, Modulus m,
                              const std::function<std::int64_t(std::span<const Elem>)>& f);

  const GroupPtr& group() const { return group_; }
  unsigned degree() const { return degree_; }
  const Modulus& modulus() const { return mod_; }
  const DenseVec& values() const { return values_; }
  DenseVec& values() { return values_; }
  std::size_t size() const { return values_.size(); }

  // 0 whenever an argument is the identity
  Scalar operator()(std::span<const Elem> args) const;
  Scalar operator()(std::initializer_list<Elem> args) const {
    return (*this)(std::span<const Elem>(args.begin(), args.size()));
  }
  bool isZero() const;
  std::size_t support() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain scaled(std::int64_t k) const;
  bool operator==(const Cochain& o) const;

 private:
  GroupPtr group_;
  unsigned degree_ = 0;
  Modulus mod_;
  DenseVec values_;
};

// Index of a tuple of non-identity elements, and its inverse.
std::uint64_t tupleIndex(const groups::FiniteGroup& g, std::span<const Elem> args);
void tupleAt(const groups::FiniteGroup& g, std::uint64_t index, std::span<Elem> out);
// Visit every n-tuple of non-identity elements in index order.
void forEachTuple(const groups::FiniteGroup& g, unsigned n,
                  const std::function<void(std::uint64_t, std::span<const Elem>)>& f);

// Terms of (dc)(g_1..g_{n+1}) as (source index, sign); terms whose argument
// contains the identity are omitted, so duplicates may remain.
struct Term {
  std::uint64_t index;
  int sign;
};
void coboundaryTerms(const groups::FiniteGroup& g, std::span<const Elem> tuple, std::vector<Term>& out);

// Matrix of d^n : C^n → C^{n+1} acting on row vectors (row i = d(e_i)).
exactla::SparseModMatrix coboundaryMatrix(const GroupPtr& g, unsigned n, Modulus m, const Budget& budget = {});
Cochain coboundary(const Cochain& c);
// d over the integers, on values given as integers
std::vector<std::int64_t> integralCoboundary(const groups::FiniteGroup& g, unsigned n,
                                             const std::vector<std::int64_t>& values);
bool isCocycle(const Cochain& c);

}  // namespace unram::cochain
