#include "unram/groups/group.hpp"

#include <map>
#include <numeric>

namespace unram::groups {

NonAssociative::NonAssociative(Elem x, Elem y, Elem z)
    : GroupError("table is not associative at (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                 std::to_string(z) + ")"),
      a(x), b(y), c(z) {}

NoInverse::NoInverse(Elem g) : GroupError("element " + std::to_string(g) + " has no inverse"), element(g) {}

GroupPtr FiniteGroup::fromMultTable(const std::vector<std::vector<Elem>>& table, std::string name,
                                    const GroupLimits& limits) {
  const std::size_t n = table.size();
  if (n == 0) throw GroupError("empty multiplication table");
  if (n > limits.maxOrder)
    throw GroupError("group order " + std::to_string(n) + " exceeds the configured maximum " +
                     std::to_string(limits.maxOrder));
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->name_ = std::move(name);
  g->table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw GroupError("multiplication table row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) throw GroupError("table entry out of range at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
      g->table_[a * n + b] = table[a][b];
    }
  }
  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = g->mul(c, x) == x && g->mul(x, c) == x;
    if (ok) e = c;
  }
  if (e == n) throw NoIdentity();
  g->identity_ = static_cast<Elem>(e);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem ab = g->mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (g->mul(ab, c) != g->mul(a, g->mul(b, c))) throw NonAssociative(a, b, c);
    }
  g->finalize();
  return g;
}

void FiniteGroup::finalize() {
  const std::size_t n = n_;
  inverses_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    Elem inv = static_cast<Elem>(n);
    for (Elem b = 0; b < n; ++b)
      if (mul(b, a) == identity_ && mul(a, b) == identity_) {
        inv = b;
        break;
      }
    if (inv == n) throw NoInverse(a);
    inverses_[a] = inv;
  }
  orders_.assign(n, 1);
  exponent_ = 1;
  for (Elem a = 0; a < n; ++a) {
    Elem x = a;
    std::uint32_t k = 1;
    while (x != identity_) {
      x = mul(x, a);
      ++k;
    }
    orders_[a] = k;
    exponent_ = std::lcm(exponent_, k);
  }
  abelian_ = true;
  for (Elem a = 0; a < n && abelian_; ++a)
    for (Elem b = a + 1; b < n && abelian_; ++b) abelian_ = commute(a, b);
  // FNV-1a over the canonical bytes
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonicalBytes()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  fingerprint_ = h;
}

Elem FiniteGroup::power(Elem g, std::int64_t k) const {
  std::int64_t ord = orders_[g];
  k %= ord;
  if (k < 0) k += ord;
  Elem x = identity_;
  for (std::int64_t i = 0; i < k; ++i) x = mul(x, g);
  return x;
}

std::string FiniteGroup::canonicalBytes() const {
  std::string out;
  out.reserve(4 + table_.size() * 4);
  auto putU32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  };
  putU32(static_cast<std::uint32_t>(n_));
  for (Elem x : table_) putU32(x);
  return out;
}

GroupPtr FiniteGroup::fromPermutations(const std::vector<std::vector<Elem>>& generators, std::string name,
                                       const GroupLimits& limits) {
  std::size_t degree = 0;
  for (const auto& p : generators) degree = std::max(degree, p.size());
  std::vector<std::vector<Elem>> gens;
  for (const auto& p : generators) {
    std::vector<Elem> q(degree);
    std::vector<char> seen(degree, 0);
    for (std::size_t i = 0; i < degree; ++i) {
      Elem img = i < p.size() ? p[i] : static_cast<Elem>(i);
      if (img >= degree || (i < p.size() && img >= p.size()) || seen[img])
        throw NotAPermutation("generator is not a bijection of {0.." + std::to_string(p.size() - 1) + "}");
      seen[img] = 1;
      q[i] = img;
    }
    gens.push_back(std::move(q));
  }
  std::vector<Elem> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<Elem>, Elem> index;
  std::vector<std::vector<Elem>> elems{id};
  index[id] = 0;
  // right multiplication by generators reaches every element of the generated group
  auto compose = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    std::vector<Elem> c(degree);
    for (std::size_t i = 0; i < degree; ++i) c[i] = b[a[i]];
    return c;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : gens) {
      auto c = compose(elems[i], s);
      if (index.emplace(c, static_cast<Elem>(elems.size())).second) {
        elems.push_back(std::move(c));
        if (elems.size() > limits.maxOrder)
          throw ClosureTooLarge("permutation closure exceeds " + std::to_string(limits.maxOrder) + " elements");
      }
    }
  }
  const std::size_t n = elems.size();
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->name_ = std::move(name);
  g->identity_ = 0;
  g->table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g->table_[a * n + b] = index.at(compose(elems[a], elems[b]));
  g->perms_ = std::move(elems);
  g->finalize();
  return g;
}

GroupPtr directProduct(const GroupPtr& a, const GroupPtr& b, std::string name) {
  const std::size_t na = a->order(), nb = b->order();
  std::vector<std::vector<Elem>> t(na * nb, std::vector<Elem>(na * nb));
  for (Elem x = 0; x < na * nb; ++x)
    for (Elem y = 0; y < na * nb; ++y)
      t[x][y] = a->mul(x / nb, y / nb) * static_cast<Elem>(nb) + b->mul(x % nb, y % nb);
  if (name.empty()) name = a->name() + "x" + b->name();
  return FiniteGroup::fromMultTable(t, std::move(name), GroupLimits{std::max<std::size_t>(256, na * nb)});
}

GroupHom GroupHom::make(GroupPtr source, GroupPtr target, std::vector<Elem> map) {
  if (map.size() != source->order()) throw GroupError("homomorphism map has wrong length");
  for (Elem x : map)
    if (x >= target->order()) throw GroupError("homomorphism image out of range");
  for (Elem a = 0; a < source->order(); ++a)
    for (Elem b = 0; b < source->order(); ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        throw GroupError("map is not a homomorphism at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  return GroupHom{std::move(source), std::move(target), std::move(map)};
}

GroupHom GroupHom::identity(const GroupPtr& g) {
  std::vector<Elem> m(g->order());
  std::iota(m.begin(), m.end(), 0);
  return GroupHom{g, g, std::move(m)};
}

GroupHom GroupHom::trivial(const GroupPtr& source, const GroupPtr& target) {
  return GroupHom{source, target, std::vector<Elem>(source->order(), target->identity())};
}

GroupHom GroupHom::after(const GroupHom& inner) const {
  if (inner.target.get() != source.get() && inner.target->canonicalBytes() != source->canonicalBytes())
    throw GroupError("cannot compose homomorphisms with mismatched groups");
  std::vector<Elem> m(inner.source->order());
  for (Elem x = 0; x < m.size(); ++x) m[x] = map[inner.map[x]];
  return GroupHom{inner.source, target, std::move(m)};
}

}  // namespace unram::groups
