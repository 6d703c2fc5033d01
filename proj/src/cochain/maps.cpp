#include "unram/cochain/maps.hpp"

#include <algorithm>

namespace unram::cochain {

using groups::GroupHom;
using groups::Subgroup;

Cochain pullbackCochain(const GroupHom& f, const Cochain& c) {
  if (f.target->table() != c.group()->table()) throw GroupMismatch("pullback: cochain lives on a different group");
  std::vector<Elem> img(c.degree());
  return Cochain::fromFunction(f.source, c.degree(), c.modulus(), [&](std::span<const Elem> t) -> std::int64_t {
    for (std::size_t i = 0; i < t.size(); ++i) img[i] = f(t[i]);
    return c(img);
  });
}

CohClass pullback(const GroupHom& f, const CohClass& x, CohomologyStore& store) {
  auto h = store.get(f.source, x.rep.degree(), x.rep.modulus().value());
  return h->classOf(pullbackCochain(f, x.rep));
}

CohClass restriction(const Subgroup& h, const CohClass& x, CohomologyStore& store) {
  if (h.parent()->table() != x.rep.group()->table()) throw NotASubgroup("restriction to a subgroup of another group");
  return pullback(h.inclusion(), x, store);
}

CosetSystem::CosetSystem(const Subgroup& h) : g_(h.parent()) {
  const auto& g = *g_;
  coset_.assign(g.order(), UINT32_MAX);
  for (Elem x = 0; x < g.order(); ++x) {
    if (coset_[x] != UINT32_MAX) continue;
    const std::uint32_t id = static_cast<std::uint32_t>(reps_.size());
    Elem rep = h.contains(x) ? g.identity() : x;
    reps_.push_back(rep);
    for (Elem y : h.elements()) coset_[g.mul(y, x)] = id;
  }
}

CosetSystem::CosetSystem(const Subgroup& h, std::mt19937_64& rng) : CosetSystem(h) {
  const auto& g = *g_;
  for (std::size_t c = 0; c < reps_.size(); ++c) {
    if (h.contains(reps_[c])) continue;
    Elem y = h.elements()[rng() % h.order()];
    reps_[c] = g.mul(y, reps_[c]);
  }
}

Elem CosetSystem::rho(Elem x) const { return g_->mul(x, g_->inverse(rep(x))); }

Cochain transferCochain(const Subgroup& h, const Cochain& c, const CosetSystem& cosets) {
  const auto hg = h.asGroup();
  if (hg->table() != c.group()->table()) throw NotASubgroup("transfer: cochain is not defined on this subgroup");
  const GroupPtr& g = h.parent();
  std::vector<Elem> args(c.degree());
  return Cochain::fromFunction(g, c.degree(), c.modulus(), [&](std::span<const Elem> t) -> std::int64_t {
    std::int64_t acc = 0;
    for (Elem rep : cosets.representatives()) {
      Elem cur = rep;
      for (std::size_t i = 0; i < t.size(); ++i) {
        Elem y = g->mul(cur, t[i]);
        args[i] = h.localIndex(cosets.rho(y));
        cur = cosets.rep(y);
      }
      acc += c(args);
    }
    return acc;
  });
}

CohClass transfer(const Subgroup& h, const CohClass& x, CohomologyStore& store, const CosetSystem& cosets) {
  auto target = store.get(h.parent(), x.rep.degree(), x.rep.modulus().value());
  return target->classOf(transferCochain(h, x.rep, cosets));
}

CohClass transfer(const Subgroup& h, const CohClass& x, CohomologyStore& store) {
  return transfer(h, x, store, CosetSystem(h));
}

Cochain cupCochain(const Cochain& x, const Cochain& y) {
  if (!(x.modulus() == y.modulus())) throw ModulusMismatch("cup product of cochains with different moduli");
  if (x.group()->table() != y.group()->table()) throw GroupMismatch("cup product across different groups");
  const unsigned p = x.degree(), q = y.degree();
  const Modulus& m = x.modulus();
  const std::uint64_t ny = y.size();
  Cochain out(x.group(), p + q, m);
  // index(g_1..g_{p+q}) = index(g_1..g_p)·(N-1)^q + index(g_{p+1}..)
  for (std::uint64_t i = 0; i < x.size(); ++i) {
    const Scalar a = x.values()[i];
    if (!a) continue;
    for (std::uint64_t j = 0; j < ny; ++j) out.values()[i * ny + j] = m.mul(a, y.values()[j]);
  }
  return out;
}

CohClass cup(const CohClass& x, const CohClass& y, CohomologyStore& store) {
  auto target = store.get(x.rep.group(), x.rep.degree() + y.rep.degree(), x.rep.modulus().value());
  return target->classOf(cupCochain(x.rep, y.rep));
}

Cochain bocksteinCochain(const Cochain& c) {
  const auto& g = *c.group();
  const std::int64_t m = c.modulus().value();
  std::vector<std::int64_t> lifted(c.values().begin(), c.values().end());
  auto d = integralCoboundary(g, c.degree(), lifted);
  DenseVec out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] % m != 0) throw NotACocycle("Bockstein of a cochain that is not a cocycle");
    out[i] = c.modulus().fromInt(d[i] / m);
  }
  return Cochain(c.group(), c.degree() + 1, c.modulus(), std::move(out));
}

CohClass bockstein(const CohClass& x, CohomologyStore& store) {
  auto target = store.get(x.rep.group(), x.rep.degree() + 1, x.rep.modulus().value());
  return target->classOf(bocksteinCochain(x.rep));
}

Cochain changeCoefficients(const Cochain& c, Modulus target, std::int64_t k) {
  if ((static_cast<std::int64_t>(c.modulus().value()) * k) % static_cast<std::int64_t>(target.value()) != 0)
    throw ModulusMismatch("coefficient map Z/m → Z/m' is not well defined");
  DenseVec v(c.size());
  const Scalar kk = target.fromInt(k);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = target.mul(target.reduce(c.values()[i]), kk);
  return Cochain(c.group(), c.degree(), target, std::move(v));
}

}  // namespace unram::cochain
