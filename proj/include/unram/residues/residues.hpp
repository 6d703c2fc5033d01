#pragma once

#include "unram/cochain/maps.hpp"
#include "unram/cochain/stabilize.hpp"
#include "unram/groups/subgroup.hpp"

#include <functional>
#include <optional>

namespace unram::residues {

using cochain::CohClass;
using cochain::Cochain;
using cochain::CohomologyStore;
using exactla::Modulus;
using exactla::Scalar;
using exactla::SparseRow;
using groups::Elem;
using groups::GroupPtr;
using groups::ResiduePair;

class NotCentralizing : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class DegreeZero : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class PreconditionViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class ConsistencyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kResidueSignConvention = "eps_j = (-1)^j";
inline constexpr const char* kLeibnizSign = "(-1)^p";

// (∂c)(d_1..d_{n-1}) = Σ_j (-1)^j c(d_1..d_j, s, d_{j+1}..d_{n-1}), a cochain on D.
Cochain residueCochain(const Cochain& c, const ResiduePair& pair);
CohClass residue(const CohClass& x, const ResiduePair& pair, CohomologyStore& store);

// H^n(G, Z/m) or its Q/Z stabilization, presented on (Z/m)^r by the base
// generator coordinates and a list of relation rows.
struct Ambient {
  cochain::CohomologyPtr base;
  cochain::StabilizedPtr stable;  // null when not stabilized

  static Ambient of(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m, bool stabilized);
  const Modulus& modulus() const { return base->modulus(); }
  std::size_t rank() const { return base->rank(); }
  std::vector<SparseRow> relations() const;
  std::vector<Scalar> invariantFactors() const;
  std::uint64_t order() const;
  bool isZero(const std::vector<Scalar>& coords) const;
};

// A subgroup of an ambient group: generated by rows in base coordinates
// (the ambient relations are always included).
class SubgroupOf {
 public:
  SubgroupOf() = default;
  SubgroupOf(Ambient ambient, std::vector<SparseRow> generators);

  const Ambient& ambient() const { return ambient_; }
  const std::vector<Scalar>& invariantFactors() const { return quotient_.invariantFactors(); }
  std::uint64_t order() const { return quotient_.order(); }
  bool isTrivial() const { return order() == 1; }
  // canonical generators (Howell basis of generators + relations)
  const exactla::HowellBasis& basis() const { return basis_; }
  // generators modulo the relations, one per invariant factor
  std::vector<std::vector<Scalar>> generatorCoords() const;
  bool contains(const std::vector<Scalar>& coords) const;
  bool subsetOf(const SubgroupOf& o) const;
  bool operator==(const SubgroupOf& o) const { return basis_.rows() == o.basis_.rows(); }

  SubgroupOf intersect(const SubgroupOf& o) const;
  SubgroupOf operator+(const SubgroupOf& o) const;
  // this / (this ∩ o), as invariant factors
  std::vector<Scalar> quotientBy(const SubgroupOf& o) const;

 private:
  Ambient ambient_;
  exactla::HowellBasis basis_;
  exactla::ModSubquotient quotient_;
};

// A homomorphism from a source ambient, given by the target coordinates of
// each source generator.
struct CoordinateMap {
  Ambient target;
  std::vector<std::vector<Scalar>> images;  // one row per source generator
  // subgroup of the target that counts as zero (defaults to the target relations)
  std::vector<SparseRow> extraZero;
};

// {a : every map sends a into its target's zero subgroup}
SubgroupOf jointKernel(const Ambient& source, const std::vector<CoordinateMap>& maps);

// Deterministic parallel map: results are stored by index.
void parallelFor(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

struct KernelOptions {
  bool stabilized = true;
  unsigned jobs = 1;
  // use every (D, s) with s central in D instead of (Z_G(s), s)
  bool allCentralPairs = false;
};

enum class Family { Abelian, Bicyclic };
const char* familyName(Family f);

SubgroupOf nrKernel(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m, const KernelOptions& opt = {});
SubgroupOf nabKernel(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m, Family family,
                     const KernelOptions& opt = {});
// Ch(G) = span{χ ∪ β(ψ)} on G itself, inside the ambient of degree 3
SubgroupOf chernProducts(CohomologyStore& store, const GroupPtr& g, Scalar m, bool stabilized = true);
// {x : res_A x ∈ Ch(A) for every abelian A}, degree 3
SubgroupOf nabModuloChern(CohomologyStore& store, const GroupPtr& g, Scalar m, const KernelOptions& opt = {});

struct BogomolovResult {
  SubgroupOf bicyclic;  // the reported B0
  SubgroupOf residue;   // nrKernel(G, 2, stabilized)
  std::vector<Scalar> invariantFactors() const { return bicyclic.invariantFactors(); }
};
// Throws ConsistencyFailure if the two paths disagree.
BogomolovResult bogomolovMultiplier(CohomologyStore& store, const GroupPtr& g, unsigned jobs = 1);

// Σ_H Cor(χ ∪ β(ψ)) over all subgroups H, inside stabilized H^3(G, Q/Z).
SubgroupOf permutationNegligible(CohomologyStore& store, const GroupPtr& g, unsigned jobs = 1);

struct H3Result {
  SubgroupOf nr;
  SubgroupOf negligible;
  std::vector<Scalar> quotient;  // NR_3 / (NR_3 ∩ P)
};
H3Result h3NrQuotient(CohomologyStore& store, const GroupPtr& g, unsigned jobs = 1);

struct PairCheck {
  Elem element = 0;
  std::size_t centralizerOrder = 0;
  bool passed = false;
};
struct RefinedCheck {
  unsigned degree = 0;
  Scalar modulus = 0;                 // working modulus, a multiple of exp(G)
  bool nrInsideNab = false;           // (b)
  std::vector<PairCheck> residues;    // (a), one per residue pair
  std::string nabVariant;             // "literal" or "modulo Chern classes"
  bool passed() const;
};
RefinedCheck refinedSequenceCheck(CohomologyStore& store, const GroupPtr& g, unsigned n, Scalar m,
                                  unsigned jobs = 1);

// One row per degree; empty vectors mean "not computed".
struct DegreeEntry {
  unsigned degree = 0;
  std::vector<Scalar> cohomology, nr, nabAbelian, nabBicyclic;
  std::uint64_t ambientOrder = 0;
};

struct InvariantReport {
  std::string group;
  std::string hash;
  Scalar modulus = 0;
  bool stabilized = true;
  std::vector<DegreeEntry> degrees;
  std::optional<std::vector<Scalar>> b0, h3p, h3nrQuotient;
  std::uint64_t h2Order = 0;  // |H^2(G, Q/Z)| when b0 is set
  std::vector<std::string> assumptions;
  std::vector<std::pair<std::string, double>> timings;  // seconds

  // Subgroup orders divide their ambient orders; B0 divides |H^2(G, Q/Z)|.
  bool consistent() const;
};

std::uint64_t orderOf(const std::vector<Scalar>& factors);

// ∂(x∪y) = ∂x ∪ res_D y + (-1)^p res_D x ∪ ∂y in H^{p+q-1}(D, Z/m)
bool residueCupCheck(const ResiduePair& pair, const CohClass& x, const CohClass& y, CohomologyStore& store);

}  // namespace unram::residues
