#pragma once

#include "unram/cochain/cohomology.hpp"
#include "unram/groups/subgroup.hpp"

#include <random>

namespace unram::cochain {

class NotASubgroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cochain-level maps; the class-level versions below solve coordinates in the
// target group obtained from the store.
Cochain pullbackCochain(const groups::GroupHom& f, const Cochain& c);
CohClass pullback(const groups::GroupHom& f, const CohClass& x, CohomologyStore& store);
CohClass restriction(const groups::Subgroup& h, const CohClass& x, CohomologyStore& store);

// Right cosets Hg with representatives; the coset of H itself is represented
// by the identity.
class CosetSystem {
 public:
  explicit CosetSystem(const groups::Subgroup& h);
  // representatives drawn at random from each coset (except H itself)
  CosetSystem(const groups::Subgroup& h, std::mt19937_64& rng);

  std::size_t index() const { return reps_.size(); }
  const std::vector<Elem>& representatives() const { return reps_; }
  Elem rep(Elem x) const { return reps_[coset_[x]]; }
  // x·rep(Hx)^{-1} ∈ H, as a parent element
  Elem rho(Elem x) const;

 private:
  GroupPtr g_;
  std::vector<Elem> reps_;
  std::vector<std::uint32_t> coset_;
};

// c_G(g_1..g_n) = Σ_t c_H(ρ(t_0 g_1), ρ(t_1 g_2), ...), t_0 = t, t_i = rep(t_{i-1} g_i)
Cochain transferCochain(const groups::Subgroup& h, const Cochain& c, const CosetSystem& cosets);
CohClass transfer(const groups::Subgroup& h, const CohClass& x, CohomologyStore& store);
CohClass transfer(const groups::Subgroup& h, const CohClass& x, CohomologyStore& store, const CosetSystem& cosets);

// Alexander–Whitney: (x∪y)(g_1..g_{p+q}) = x(g_1..g_p)·y(g_{p+1}..g_{p+q})
Cochain cupCochain(const Cochain& x, const Cochain& y);
CohClass cup(const CohClass& x, const CohClass& y, CohomologyStore& store);

// Connecting map of 0 → Z/m → Z/m² → Z/m → 0: lift to [0, m), apply the
// integral coboundary and divide by m.
Cochain bocksteinCochain(const Cochain& c);
CohClass bockstein(const CohClass& x, CohomologyStore& store);

// Coefficient change Z/m → Z/m' induced by 1 ↦ k (k·m ≡ 0 mod m' required).
Cochain changeCoefficients(const Cochain& c, Modulus target, std::int64_t k);

}  // namespace unram::cochain
