#include "unram/groups/subgroup.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>

namespace unram::groups {

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::subsetOf(const Bitset& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

Subgroup Subgroup::generatedBy(const GroupPtr& parent, const std::vector<Elem>& gens) {
  Subgroup s;
  s.parent_ = parent;
  s.bits_ = Bitset(parent->order());
  std::vector<Elem> found{parent->identity()};
  s.bits_.set(parent->identity());
  for (Elem x : gens)
    if (x != parent->identity() && std::find(s.gens_.begin(), s.gens_.end(), x) == s.gens_.end())
      s.gens_.push_back(x);
  for (std::size_t i = 0; i < found.size(); ++i)
    for (Elem x : s.gens_) {
      Elem y = parent->mul(found[i], x);
      if (!s.bits_.test(y)) {
        s.bits_.set(y);
        found.push_back(y);
      }
    }
  std::sort(found.begin(), found.end());
  s.elems_ = std::move(found);
  return s;
}

Subgroup Subgroup::fromElements(const GroupPtr& parent, const std::vector<Elem>& elements) {
  Subgroup s = generatedBy(parent, elements);
  std::vector<Elem> sorted = elements;
  sorted.push_back(parent->identity());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted != s.elems_) throw GroupError("element set is not closed under multiplication");
  return s;
}

Subgroup Subgroup::whole(const GroupPtr& parent) {
  std::vector<Elem> all(parent->order());
  for (Elem i = 0; i < all.size(); ++i) all[i] = i;
  return generatedBy(parent, all);
}

Subgroup Subgroup::trivial(const GroupPtr& parent) { return generatedBy(parent, {}); }

bool Subgroup::isAbelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!parent_->commute(gens_[i], gens_[j])) return false;
  return true;
}

Elem Subgroup::localIndex(Elem parentElem) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), parentElem);
  if (it == elems_.end() || *it != parentElem) throw GroupError("element not in subgroup");
  return static_cast<Elem>(it - elems_.begin());
}

GroupPtr Subgroup::asGroup() const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (group_) return group_;
  const std::size_t n = elems_.size();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = localIndex(parent_->mul(elems_[a], elems_[b]));
  std::string name = parent_->name().empty() ? "" : parent_->name() + "<" + std::to_string(n) + ">";
  group_ = FiniteGroup::fromMultTable(t, name, GroupLimits{std::max<std::size_t>(256, n)});
  return group_;
}

GroupHom Subgroup::inclusion() const { return GroupHom{asGroup(), parent_, elems_}; }

Subgroup centralizer(const GroupPtr& g, Elem s) {
  std::vector<Elem> els;
  for (Elem x = 0; x < g->order(); ++x)
    if (g->commute(x, s)) els.push_back(x);
  return Subgroup::generatedBy(g, els);
}

Subgroup center(const GroupPtr& g) {
  std::vector<Elem> els;
  for (Elem x = 0; x < g->order(); ++x) {
    bool central = true;
    for (Elem y = 0; y < g->order() && central; ++y) central = g->commute(x, y);
    if (central) els.push_back(x);
  }
  return Subgroup::generatedBy(g, els);
}

namespace {

void sortCanonical(std::vector<Subgroup>& v) {
  std::sort(v.begin(), v.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
}

}  // namespace

std::vector<Subgroup> cyclicSubgroups(const GroupPtr& g) {
  std::set<Bitset> seen;
  std::vector<Subgroup> out;
  for (Elem x = 0; x < g->order(); ++x) {
    Subgroup c = Subgroup::generatedBy(g, {x});
    if (seen.insert(c.members()).second) out.push_back(std::move(c));
  }
  sortCanonical(out);
  return out;
}

std::vector<Subgroup> allSubgroups(const GroupPtr& g, const std::function<void(std::size_t)>& progress) {
  std::vector<Subgroup> cyclic = cyclicSubgroups(g);
  std::set<Bitset> seen;
  std::vector<Subgroup> all;
  for (const auto& c : cyclic) {
    seen.insert(c.members());
    all.push_back(c);
  }
  std::vector<Subgroup> frontier = cyclic;
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& s : frontier)
      for (const auto& c : cyclic) {
        if (c.members().subsetOf(s.members())) continue;
        std::vector<Elem> gens = s.generators();
        gens.insert(gens.end(), c.generators().begin(), c.generators().end());
        Subgroup j = Subgroup::generatedBy(g, gens);
        if (seen.insert(j.members()).second) next.push_back(std::move(j));
      }
    for (auto& s : next) all.push_back(s);
    if (progress) progress(all.size());
    frontier.swap(next);
  }
  sortCanonical(all);
  return all;
}

std::vector<Subgroup> bicyclicSubgroups(const GroupPtr& g) {
  std::set<Bitset> seen;
  std::vector<Subgroup> out;
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y = x; y < g->order(); ++y) {
      if (!g->commute(x, y)) continue;
      Subgroup s = Subgroup::generatedBy(g, {x, y});
      if (seen.insert(s.members()).second) out.push_back(std::move(s));
    }
  sortCanonical(out);
  return out;
}

std::vector<Subgroup> abelianSubgroups(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (auto& s : allSubgroups(g))
    if (s.isAbelian()) out.push_back(std::move(s));
  return out;
}

std::vector<ResiduePair> residuePairs(const GroupPtr& g) {
  std::vector<ResiduePair> out;
  for (Elem s = 0; s < g->order(); ++s) out.push_back({centralizer(g, s), s, g->elementOrder(s)});
  return out;
}

}  // namespace unram::groups
