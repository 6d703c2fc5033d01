#pragma once

#include "unram/groups/group.hpp"

#include <functional>

namespace unram::groups {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  std::size_t count() const;
  std::size_t size() const { return n_; }
  bool operator==(const Bitset& o) const { return words_ == o.words_; }
  bool operator<(const Bitset& o) const { return words_ < o.words_; }
  bool subsetOf(const Bitset& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class Subgroup {
 public:
  Subgroup() = default;
  // Closure of the given generators inside parent.
  static Subgroup generatedBy(const GroupPtr& parent, const std::vector<Elem>& gens);
  // Validates closure; throws GroupError otherwise.
  static Subgroup fromElements(const GroupPtr& parent, const std::vector<Elem>& elements);
  static Subgroup whole(const GroupPtr& parent);
  static Subgroup trivial(const GroupPtr& parent);

  const GroupPtr& parent() const { return parent_; }
  const Bitset& members() const { return bits_; }
  bool contains(Elem g) const { return bits_.test(g); }
  std::size_t order() const { return elems_.size(); }
  // ascending parent indices
  const std::vector<Elem>& elements() const { return elems_; }
  const std::vector<Elem>& generators() const { return gens_; }
  bool isAbelian() const;
  bool operator==(const Subgroup& o) const { return bits_ == o.bits_; }

  // The subgroup as a group in its own right (elements in ascending parent
  // order) and its inclusion into the parent.
  GroupPtr asGroup() const;
  GroupHom inclusion() const;
  // index of a parent element inside asGroup()
  Elem localIndex(Elem parentElem) const;

 private:
  GroupPtr parent_;
  Bitset bits_;
  std::vector<Elem> elems_;
  std::vector<Elem> gens_;
  mutable GroupPtr group_;
};

struct ResiduePair {
  Subgroup subgroup;  // D = Z_G(s)
  Elem element;       // s
  std::uint32_t torsionOrder;
};

Subgroup centralizer(const GroupPtr& g, Elem s);
Subgroup center(const GroupPtr& g);
// Every subgroup exactly once, ordered by (order, element bitset).
std::vector<Subgroup> allSubgroups(const GroupPtr& g,
                                   const std::function<void(std::size_t)>& progress = {});
std::vector<Subgroup> cyclicSubgroups(const GroupPtr& g);
std::vector<Subgroup> bicyclicSubgroups(const GroupPtr& g);
std::vector<Subgroup> abelianSubgroups(const GroupPtr& g);
std::vector<ResiduePair> residuePairs(const GroupPtr& g);

}  // namespace unram::groups
