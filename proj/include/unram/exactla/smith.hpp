#pragma once

#include "unram/exactla/sparse.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace unram::exactla {

// Smith form of a dense matrix over Z/m acting on row vectors:
// (Z/m)^cols / rowspan(A) ≅ ⊕ Z/m / (diag_i), with coordinates x ↦ x·V.
struct ModSmith {
  std::vector<Scalar> diag;             // length cols; divisors of m, m meaning a zero entry
  std::vector<std::vector<Scalar>> v;   // cols × cols
  std::vector<std::vector<Scalar>> vInv;
};

ModSmith smithModM(std::vector<std::vector<Scalar>> a, std::size_t cols, const Modulus& mod);

struct IntegerSmith {
  std::vector<std::string> factors;  // nonzero invariant factors, ascending divisor chain, decimal
  std::size_t rank = 0;
  // nontrivial factors (those > 1) as machine integers; throws if one overflows
  std::vector<std::uint64_t> torsion() const;
};

struct IntEntry {
  std::uint32_t col;
  std::int64_t val;
};
using IntRow = std::vector<IntEntry>;

class DimensionTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegerSmithLimits {
  std::size_t maxDim = 50000;
  std::size_t maxDenseResidual = 4'000'000;  // rows × cols of the non-unit block
};

IntegerSmith smithFormZ(const std::vector<IntRow>& rows, std::size_t cols,
                        const IntegerSmithLimits& limits = {});

}  // namespace unram::exactla
