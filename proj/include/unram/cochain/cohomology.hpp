#pragma once

#include "unram/cochain/cochain.hpp"
#include "unram/exactla/subquotient.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace unram::cochain {

class CohomologyGroup;
using CohomologyPtr = std::shared_ptr<const CohomologyGroup>;

// A class in H^n(G, Z/m): coordinates on the generators of its home group
// and a cocycle representative.
struct CohClass {
  CohomologyPtr home;
  std::vector<Scalar> coords;
  Cochain rep;

  bool isZero() const;
  CohClass operator+(const CohClass& o) const;
  CohClass scaled(std::int64_t k) const;
  // same home structure and equal coordinates
  bool operator==(const CohClass& o) const;
};

// H^n(G, Z/m) = Ker d^n / Im d^{n-1} with generator cocycles and a coordinate solver.
class CohomologyGroup : public std::enable_shared_from_this<CohomologyGroup> {
 public:
  static CohomologyPtr compute(const GroupPtr& g, unsigned n, Modulus m, const Budget& budget = {});
  // Rebuild from a previously computed structure (cache path).
  static CohomologyPtr fromStructure(const GroupPtr& g, unsigned n, Modulus m, exactla::ModSubquotient structure);

  const GroupPtr& group() const { return group_; }
  unsigned degree() const { return degree_; }
  const Modulus& modulus() const { return mod_; }
  const exactla::ModSubquotient& structure() const { return sq_; }
  const std::vector<Scalar>& invariantFactors() const { return sq_.invariantFactors(); }
  std::size_t rank() const { return gens_.size(); }
  std::uint64_t order() const { return sq_.order(); }
  const std::vector<Cochain>& generatorCocycles() const { return gens_; }

  // Throws NotACocycle if c is not a cocycle of this degree.
  std::vector<Scalar> coordinates(const Cochain& c) const;
  CohClass classOf(const Cochain& c) const;
  CohClass element(const std::vector<std::int64_t>& coords) const;
  CohClass generator(std::size_t i) const;
  CohClass zero() const;

 private:
  CohomologyGroup() = default;
  void buildGenerators();

  GroupPtr group_;
  unsigned degree_ = 0;
  Modulus mod_;
  exactla::ModSubquotient sq_;
  std::vector<Cochain> gens_;
};

// Solves the cocycle system and forms the quotient; the result is
// independent of how it is cached.
exactla::ModSubquotient computeCohomologyStructure(const GroupPtr& g, unsigned n, Modulus m, const Budget& budget = {});

// Optional persistence for computed structures (the CLI supplies a disk backend).
class PersistenceBackend {
 public:
  virtual ~PersistenceBackend() = default;
  virtual std::optional<exactla::ModSubquotient> load(const groups::FiniteGroup& g, unsigned n, Scalar m) = 0;
  virtual void save(const groups::FiniteGroup& g, unsigned n, Scalar m, const exactla::ModSubquotient& s) = 0;
};

class StabilizedCohomology;
using StabilizedPtr = std::shared_ptr<const StabilizedCohomology>;

// In-process memo of cohomology groups keyed by table bytes, degree and
// modulus. Thread-safe; concurrent misses on the same key may compute twice.
class CohomologyStore {
 public:
  explicit CohomologyStore(Budget budget = {}, std::shared_ptr<PersistenceBackend> backend = nullptr);

  CohomologyPtr get(const GroupPtr& g, unsigned n, Scalar m);
  StabilizedPtr stabilized(const GroupPtr& g, unsigned n, Scalar m0);
  const Budget& budget() const { return budget_; }
  void setBackend(std::shared_ptr<PersistenceBackend> backend);
  std::size_t computed() const { return computed_; }
  std::size_t loaded() const { return loaded_; }

 private:
  using Key = std::tuple<std::string, unsigned, Scalar>;
  Budget budget_;
  std::shared_ptr<PersistenceBackend> backend_;
  std::mutex mu_;
  std::map<Key, CohomologyPtr> groups_;
  std::map<Key, StabilizedPtr> stable_;
  std::size_t computed_ = 0, loaded_ = 0;
};

}  // namespace unram::cochain
