#include "doctest.h"

#include "support/brute.hpp"
#include "unram/exactla/binio.hpp"
#include "unram/exactla/eliminator.hpp"
#include "unram/exactla/howell.hpp"
#include "unram/exactla/smith.hpp"
#include "unram/exactla/subquotient.hpp"

#include <sstream>

using namespace unram::exactla;

namespace {

std::uint64_t spanOrder(const HowellBasis& h) {
  std::uint64_t o = 1;
  for (auto x : h.leadOrders()) o *= x;
  return o;
}

std::uint32_t ipow(std::uint32_t b, std::size_t e) {
  std::uint32_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("unit normalization yields gcd with a unit multiplier") {
  for (std::uint32_t m = 1; m <= 60; ++m) {
    Modulus mod(m);
    for (std::uint32_t a = 0; a < m; ++a) {
      auto [g, u] = mod.unitNormalize(a);
      CHECK(mod.isUnit(u));
      CHECK(mod.mul(u, a) == g % m);
      if (a) {
        CHECK(g == std::gcd(a, m) % m);
      }
    }
  }
}

TEST_CASE("howell form examples") {
  Modulus m4(4);
  auto one = SparseModMatrix::fromDense({{2}}, m4);
  CHECK(howellForm(one) == one);

  auto rows = SparseModMatrix::fromDense({{2, 0}, {0, 2}, {2, 2}}, m4);
  auto h = howellForm(rows);
  CHECK(h.rows() == 2);
  CHECK(brute::span(brute::denseRows(h), 2, 4) == brute::span(brute::denseRows(rows), 2, 4));
  CHECK(brute::span(brute::denseRows(rows), 2, 4).size() == 4);

  auto zero = SparseModMatrix(3, 2, Modulus(6));
  CHECK(howellForm(zero).rows() == 0);
}

TEST_CASE("howell form preserves span, is idempotent and canonical") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::uint32_t m = 2 + rng() % 11;
    std::size_t cols = 1 + rng() % 4;
    while (ipow(m, cols) > (1u << 12)) --cols;
    std::size_t rows = 1 + rng() % 5;
    auto a = brute::randomMatrix(rng, rows, cols, m);
    auto h = howellForm(a);
    auto spanA = brute::span(brute::denseRows(a), cols, m);
    CHECK(brute::span(brute::denseRows(h), cols, m) == spanA);
    CHECK(howellForm(h) == h);
    CHECK(spanOrder(howellBasis(a)) == spanA.size());
    // a different generating set of the same span gives the same form
    auto b = a;
    if (a.rows() >= 2) b.appendRow(combine(a.row(0), 3, a.row(1), Modulus(m)));
    std::vector<SparseRow> rev(b.rowData().rbegin(), b.rowData().rend());
    CHECK(howellForm(SparseModMatrix::fromRows(cols, Modulus(m), rev)) == h);
    // Howell property: vectors with leading zeros lie in the span of trailing rows
    auto hb = howellBasis(a);
    std::vector<std::set<brute::Vec>> tails(cols + 1);
    for (std::size_t lead = 0; lead <= cols; ++lead) {
      std::vector<brute::Vec> tail;
      for (std::size_t i = 0; i < hb.size(); ++i)
        if (hb.leadCol(i) >= lead) tail.push_back(denseFromSparse(hb.row(i), cols));
      tails[lead] = brute::span(tail, cols, m);
    }
    for (const auto& v : spanA) {
      std::size_t lead = 0;
      while (lead < cols && v[lead] == 0) ++lead;
      CHECK(tails[lead].count(v) == 1);
    }
  }
}

TEST_CASE("kernel examples") {
  auto k = kernel(SparseModMatrix::fromDense({{2}}, Modulus(4)));
  CHECK(k.rows() == 1);
  CHECK(k.at(0, 0) == 2);
  auto id = SparseModMatrix::fromDense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Modulus(6));
  CHECK(kernel(id).rows() == 0);
}

TEST_CASE("kernel of a random 6x8 matrix over Z/12: |Ker|·|Im| = 12^6") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = brute::randomMatrix(rng, 6, 8, 12, 0.35);
    auto k = kernelBasis(a);
    for (const auto& row : k.rows()) CHECK(isZero(a.leftMultiply(denseFromSparse(row, 6))));
    auto im = howellBasis(a);
    CHECK(spanOrder(k) * spanOrder(im) == 2985984ull);
    // brute-force kernel count
    std::size_t count = 0;
    brute::Vec x(6, 0);
    for (std::uint32_t code = 0; code < 2985984u; ++code) {
      std::uint32_t c = code;
      for (auto& xi : x) {
        xi = c % 12;
        c /= 12;
      }
      if (isZero(a.leftMultiply(x))) ++count;
    }
    CHECK(count == spanOrder(k));
  }
}

TEST_CASE("kernel size duality on small random matrices") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t m = 2 + rng() % 15;
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    auto a = brute::randomMatrix(rng, rows, cols, m);
    auto k = kernelBasis(a);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < rows; ++i) total *= m;
    CHECK(spanOrder(k) * spanOrder(howellBasis(a)) == total);
    CHECK(kernelBasis(SparseModMatrix::fromRows(rows, Modulus(m), k.rows())) == kernelBasis(k.toMatrix()));
  }
}

TEST_CASE("streaming eliminator agrees with Howell membership") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t m = 2 + rng() % 30;
    std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 7;
    auto a = brute::randomMatrix(rng, rows, cols, m, 0.4);
    RowSpace rs = rowSpace(a);
    auto h = howellBasis(a);
    std::uint64_t quotient = 1;
    for (std::size_t f = 0; f < rs.freeCols.size(); ++f) quotient *= m;
    std::uint64_t resid = 1;
    for (auto o : rs.residual.leadOrders()) resid *= o;
    std::uint64_t total = 1;
    for (std::size_t c = 0; c < cols; ++c) total *= m;
    CHECK(spanOrder(h) * (quotient / resid) == total);
    for (int q = 0; q < 20; ++q) {
      DenseVec v(cols);
      for (auto& x : v) x = rng() % m;
      if (q % 2 == 0) v = a.leftMultiply([&] {
        DenseVec c(rows);
        for (auto& x : c) x = rng() % m;
        return c;
      }());
      CHECK(rs.contains(v) == h.contains(v));
      CHECK(rs.contains(sparseFromDense(v)) == h.contains(v));
    }
  }
}

TEST_CASE("subquotient examples") {
  Modulus m4(4);
  auto full = SparseModMatrix::fromDense({{1}}, m4);
  CHECK(subquotient(full, SparseModMatrix(0, 1, m4)).invariantFactors() == std::vector<Scalar>{4});
  CHECK(subquotient(full, SparseModMatrix::fromDense({{2}}, m4)).invariantFactors() == std::vector<Scalar>{2});
  auto k = SparseModMatrix::fromDense({{2, 0}, {0, 1}}, m4);
  auto b = SparseModMatrix::fromDense({{0, 2}}, m4);
  CHECK(subquotient(k, b).invariantFactors() == std::vector<Scalar>{2, 2});
  CHECK_THROWS_AS(subquotient(b, k), NotASubmodule);
  auto sq = subquotient(k, b);
  CHECK_THROWS_AS(sq.coordinates(DenseVec{1, 0}), NotInNumerator);
}

TEST_CASE("subquotient structure matches brute-force cosets") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 250; ++trial) {
    std::uint32_t m = 2 + rng() % 11;
    std::size_t cols = 1 + rng() % 4;
    while (ipow(m, cols) > (1u << 12)) --cols;
    auto k = brute::randomMatrix(rng, 1 + rng() % 4, cols, m);
    // B = random combinations of K rows
    std::vector<SparseRow> brows;
    for (std::size_t i = 0, nb = rng() % 4; i < nb; ++i) {
      SparseRow r;
      for (const auto& kr : k.rowData()) r = combine(r, static_cast<Scalar>(rng() % m), kr, Modulus(m));
      brows.push_back(r);
    }
    auto b = SparseModMatrix::fromRows(cols, Modulus(m), brows);
    auto sq = subquotient(k, b);
    auto ks = brute::span(brute::denseRows(k), cols, m);
    auto bs = brute::span(brute::denseRows(b), cols, m);
    CHECK(sq.order() == ks.size() / bs.size());
    for (std::size_t i = 1; i < sq.invariantFactors().size(); ++i)
      CHECK(sq.invariantFactors()[i] % sq.invariantFactors()[i - 1] == 0);
    for (std::uint32_t d = 1; d <= m; ++d)
      CHECK(brute::quotientKilledBy(ks, bs, d, m) == brute::killedByFactors(sq.invariantFactors(), d));
    // lifts: in K, unit coordinates, d_i·lift in B
    for (std::size_t i = 0; i < sq.generatorLifts().size(); ++i) {
      const auto& g = sq.generatorLifts()[i];
      CHECK(ks.count(g) == 1);
      auto c = sq.coordinates(g);
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? 1u : 0u));
      DenseVec dg(g.size());
      for (std::size_t t = 0; t < g.size(); ++t) dg[t] = std::uint64_t(g[t]) * sq.invariantFactors()[i] % m;
      CHECK(bs.count(dg) == 1);
    }
    // coordinates are additive and vanish exactly on B
    std::vector<brute::Vec> kv(ks.begin(), ks.end());
    for (int q = 0; q < 10; ++q) {
      const auto& x = kv[rng() % kv.size()];
      const auto& y = kv[rng() % kv.size()];
      auto cx = sq.coordinates(x), cy = sq.coordinates(y), cs = sq.coordinates(brute::add(x, y, m));
      for (std::size_t j = 0; j < cs.size(); ++j) CHECK(cs[j] == (cx[j] + cy[j]) % sq.invariantFactors()[j]);
      bool zero = std::all_of(cx.begin(), cx.end(), [](Scalar s) { return s == 0; });
      CHECK(zero == (bs.count(x) == 1));
    }
    // serialization round trip
    std::stringstream ss;
    sq.write(ss);
    auto back = ModSubquotient::read(ss);
    CHECK(back.invariantFactors() == sq.invariantFactors());
  }
}

TEST_CASE("solution submodules lift consistently") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::uint32_t m = 2 + rng() % 20;
    auto eq = brute::randomMatrix(rng, 1 + rng() % 4, 1 + rng() % 6, m, 0.5);
    Submodule s = Submodule::solutionsOf(rowSpace(eq));
    auto nat = s.naturalBasis();
    auto t = eq.transpose();
    for (const auto& r : nat.rows()) {
      DenseVec v = denseFromSparse(r, eq.cols());
      CHECK(isZero(t.leftMultiply(v)));
      CHECK(s.contains(v));
      CHECK(s.lift(s.restrict(v)) == v);
    }
  }
}

TEST_CASE("truncated cache records are rejected") {
  auto sq = subquotient(SparseModMatrix::fromDense({{1, 2}, {0, 3}}, Modulus(6)), SparseModMatrix(0, 2, Modulus(6)));
  std::stringstream ss;
  sq.write(ss);
  std::string bytes = ss.str();
  std::stringstream cut(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(ModSubquotient::read(cut), binio::FormatError);
}

namespace {

// gcd of all k×k minors, by brute force
std::int64_t det(std::vector<std::vector<std::int64_t>> a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  std::int64_t s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::int64_t>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> r;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) r.push_back(a[i][c]);
      sub.push_back(r);
    }
    s += (j % 2 ? -1 : 1) * a[0][j] * det(sub);
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::int64_t> determinantalFactors(const std::vector<std::vector<std::int64_t>>& a) {
  std::size_t r = a.size(), c = a[0].size();
  std::vector<std::int64_t> dk{1}, out;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(r, k, 0, cur, rs);
    subsets(c, k, 0, cur, cs);
    std::int64_t g = 0;
    for (auto& ri : rs)
      for (auto& ci : cs) {
        std::vector<std::vector<std::int64_t>> sub;
        for (auto i : ri) {
          std::vector<std::int64_t> row;
          for (auto j : ci) row.push_back(a[i][j]);
          sub.push_back(row);
        }
        g = std::gcd(g, det(sub));
      }
    if (g == 0) break;
    out.push_back(g / dk.back());
    dk.push_back(g);
  }
  return out;
}

std::vector<IntRow> toIntRows(const std::vector<std::vector<std::int64_t>>& a) {
  std::vector<IntRow> rows;
  for (const auto& r : a) {
    IntRow ir;
    for (std::size_t c = 0; c < r.size(); ++c)
      if (r[c]) ir.push_back({static_cast<std::uint32_t>(c), r[c]});
    rows.push_back(ir);
  }
  return rows;
}

}  // namespace

TEST_CASE("integer Smith form examples") {
  auto s = smithFormZ(toIntRows({{2, 0}, {0, 3}}), 2);
  CHECK(s.factors == std::vector<std::string>{"1", "6"});
  CHECK(s.rank == 2);
  auto t = smithFormZ(toIntRows({{2, 4}, {4, 8}}), 2);
  CHECK(t.factors == std::vector<std::string>{"2"});
  CHECK(t.rank == 1);
  // normalized bar complex of Z/2: ∂2 = multiplication by 2, ∂3 = 0, so H2(Z/2, Z) = 0
  auto d2 = smithFormZ(toIntRows({{2}}), 1);
  auto d3 = smithFormZ(toIntRows({{0}}), 1);
  CHECK(d2.rank == 1);  // ∂2 injective: no 2-cycles
  CHECK(d3.rank == 0);
}

TEST_CASE("integer Smith form matches determinantal divisors") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    std::vector<std::vector<std::int64_t>> a(r, std::vector<std::int64_t>(c));
    for (auto& row : a)
      for (auto& x : row) x = (rng() % 3 == 0) ? 0 : static_cast<std::int64_t>(rng() % 13) - 6;
    auto s = smithFormZ(toIntRows(a), c);
    auto expect = determinantalFactors(a);
    REQUIRE(s.factors.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(s.factors[i] == std::to_string(std::llabs(expect[i])));
  }
}

TEST_CASE("smith form over Z/m gives a valid change of coordinates") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t m = 2 + rng() % 40;
    Modulus mod(m);
    std::size_t r = rng() % 5, c = 1 + rng() % 5;
    std::vector<std::vector<Scalar>> a(r, std::vector<Scalar>(c));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<Scalar>(rng() % m);
    auto sm = smithModM(a, c, mod);
    // V·V⁻¹ = I
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < c; ++k) s += std::uint64_t(sm.v[i][k]) * sm.vInv[k][j];
        CHECK(s % m == (i == j ? 1u % m : 0u));
      }
    // rows of A·V lie in the diagonal lattice
    for (const auto& row : a)
      for (std::size_t j = 0; j < c; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < c; ++k) s += std::uint64_t(row[k]) * sm.v[k][j];
        CHECK((s % m) % sm.diag[j] == 0);
      }
    for (std::size_t j = 1; j < c; ++j) CHECK(sm.diag[j] % sm.diag[j - 1] == 0);
  }
}
