#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace unram::groups {

using Elem = std::uint32_t;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonAssociative : public GroupError {
 public:
  NonAssociative(Elem a, Elem b, Elem c);
  Elem a, b, c;
};
class NoIdentity : public GroupError {
 public:
  NoIdentity() : GroupError("multiplication table has no two-sided identity") {}
};
class NoInverse : public GroupError {
 public:
  explicit NoInverse(Elem g);
  Elem element;
};
class NotAPermutation : public GroupError {
 public:
  using GroupError::GroupError;
};
class ClosureTooLarge : public GroupError {
 public:
  using GroupError::GroupError;
};

struct GroupLimits {
  std::size_t maxOrder = 256;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Dense multiplication table: element indices 0..N-1, table[g*N + h] = g·h.
class FiniteGroup {
 public:
  static GroupPtr fromMultTable(const std::vector<std::vector<Elem>>& table, std::string name = "",
                                const GroupLimits& limits = {});
  // Elements in discovery order, identity at index 0. Permutations act on the
  // right: (g·h)(x) = h(g(x)).
  static GroupPtr fromPermutations(const std::vector<std::vector<Elem>>& generators,
                                   std::string name = "", const GroupLimits& limits = {});

  std::size_t order() const { return n_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inverse(Elem g) const { return inverses_[g]; }
  Elem power(Elem g, std::int64_t k) const;
  std::uint32_t elementOrder(Elem g) const { return orders_[g]; }
  std::uint32_t exponent() const { return exponent_; }
  bool isAbelian() const { return abelian_; }
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }
  const std::vector<Elem>& table() const { return table_; }
  const std::string& name() const { return name_; }
  // permutation images of each element when built from permutations (else empty)
  const std::vector<std::vector<Elem>>& permutations() const { return perms_; }

  // Position of a non-identity element among the non-identity elements.
  std::uint32_t ordinal(Elem g) const { return g - (g > identity_ ? 1 : 0); }
  Elem fromOrdinal(std::uint32_t k) const { return k + (k >= identity_ ? 1 : 0); }

  // Canonical bytes of the table (little-endian u32 order followed by entries).
  std::string canonicalBytes() const;
  // 64-bit fingerprint of the canonical bytes, used for in-process caches.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  FiniteGroup() = default;
  void finalize();

  std::size_t n_ = 0;
  Elem identity_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverses_;
  std::vector<std::uint32_t> orders_;
  std::uint32_t exponent_ = 1;
  bool abelian_ = true;
  std::string name_;
  std::vector<std::vector<Elem>> perms_;
  std::uint64_t fingerprint_ = 0;
};

GroupPtr directProduct(const GroupPtr& a, const GroupPtr& b, std::string name = "");

// f: source → target given by images of source elements.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> map;

  static GroupHom make(GroupPtr source, GroupPtr target, std::vector<Elem> map);  // validates
  static GroupHom identity(const GroupPtr& g);
  static GroupHom trivial(const GroupPtr& source, const GroupPtr& target);
  Elem operator()(Elem g) const { return map[g]; }
  // (this ∘ inner)
  GroupHom after(const GroupHom& inner) const;
};

}  // namespace unram::groups
