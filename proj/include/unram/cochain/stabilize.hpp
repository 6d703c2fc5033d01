#pragma once

#include "unram/cochain/cohomology.hpp"
#include "unram/exactla/smith.hpp"

namespace unram::cochain {

// H^n(G, Q/Z) presented as H^n(G, Z/m0) / K where K is the stable kernel of
// the coefficient maps Z/m0 → Z/m0^{k+1}, x ↦ m0^k x. Elements are written in
// the base group's generator coordinates; the quotient lives on (Z/m0)^r.
class StabilizedCohomology {
 public:
  StabilizedCohomology(CohomologyPtr base, Scalar m0, std::vector<SparseRow> kernelGens, unsigned steps);

  const CohomologyPtr& base() const { return base_; }
  Scalar workingModulus() const { return m0_; }
  // generators of K in base coordinates (entries mod m0)
  const std::vector<SparseRow>& kernelGenerators() const { return kernel_; }
  // diag(d_i) rows followed by the kernel generators
  const std::vector<SparseRow>& relations() const { return relations_; }
  const exactla::ModSubquotient& quotient() const { return quotient_; }
  const std::vector<Scalar>& invariantFactors() const { return quotient_.invariantFactors(); }
  std::uint64_t order() const { return quotient_.order(); }
  unsigned steps() const { return steps_; }

  std::vector<Scalar> project(const std::vector<Scalar>& baseCoords) const;
  std::vector<Scalar> project(const CohClass& x) const { return project(x.coords); }
  bool isZero(const std::vector<Scalar>& baseCoords) const;
  bool isZero(const CohClass& x) const { return isZero(x.coords); }

 private:
  CohomologyPtr base_;
  Scalar m0_;
  std::vector<SparseRow> kernel_;
  std::vector<SparseRow> relations_;
  exactla::ModSubquotient quotient_;
  unsigned steps_;
};

// pre: m0 is a multiple of exp(G)
StabilizedPtr qzStabilize(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m0);

// H^n(G, Z) from the integer Smith form of d^{n-1}. The free rank is bounded
// by a rank computation of d^n modulo a large prime; when that bound is 0 it
// is exact (rankCertified).
struct IntegralCohomology {
  std::size_t freeRank = 0;
  std::vector<std::string> torsion;  // invariant factors > 1, ascending
  bool rankCertified = false;
  // order of the torsion part, throws on overflow
  std::uint64_t torsionOrder() const;
};

IntegralCohomology integralCohomology(const GroupPtr& g, unsigned n, const Budget& budget = {},
                                      const exactla::IntegerSmithLimits& limits = {});

}  // namespace unram::cochain
