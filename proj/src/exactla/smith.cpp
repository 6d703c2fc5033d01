#include "unram/exactla/smith.hpp"

#include "unram/simd/modvec.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <queue>

namespace unram::exactla {

namespace {

using Mat = std::vector<std::vector<Scalar>>;

// rows (i, j) <- [[p, q], [r, s]] · (row_i, row_j)
void rowMix(std::vector<Scalar>& ri, std::vector<Scalar>& rj, Scalar p, Scalar q, Scalar r, Scalar s,
            const Modulus& mod) {
  for (std::size_t c = 0; c < ri.size(); ++c) {
    Scalar a = ri[c], b = rj[c];
    ri[c] = mod.add(mod.mul(p, a), mod.mul(q, b));
    rj[c] = mod.add(mod.mul(r, a), mod.mul(s, b));
  }
}

void colMix(Mat& a, std::size_t ci, std::size_t cj, Scalar p, Scalar q, Scalar r, Scalar s,
            const Modulus& mod) {
  // [col_i, col_j] <- [col_i, col_j] · [[p, r], [q, s]]
  for (auto& row : a) {
    Scalar x = row[ci], y = row[cj];
    row[ci] = mod.add(mod.mul(p, x), mod.mul(q, y));
    row[cj] = mod.add(mod.mul(r, x), mod.mul(s, y));
  }
}

struct Unimodular {
  Scalar p, q, r, s;          // new_a = p a + q b, new_b = r a + s b
  Scalar ip, iq, ir, is;      // inverse
};

// A 2x2 transform sending (a, b) to (g, 0).
Unimodular clearing(Scalar a, Scalar b, const Modulus& mod) {
  Scalar quo;
  if (mod.divide(b, a, quo)) {
    // b = quo·a: new_b = b - quo·a
    return {1, 0, mod.neg(quo), 1, 1, 0, quo, 1};
  }
  std::int64_t s, t;
  std::int64_t g = extendedGcd(a, b, s, t);
  Scalar ag = static_cast<Scalar>(a / g), bg = static_cast<Scalar>(b / g);
  Scalar S = mod.fromInt(s), T = mod.fromInt(t);
  // [[S, T], [-b/g, a/g]] has determinant 1; inverse [[a/g, -T], [b/g, S]]
  return {S, T, mod.neg(bg), ag, ag, mod.neg(T), bg, S};
}

}  // namespace

ModSmith smithModM(Mat a, std::size_t cols, const Modulus& mod) {
  const Scalar m = mod.value();
  const std::size_t rows = a.size();
  for (auto& r : a) r.resize(cols, 0);
  // vt is V transposed so that column operations on V are row operations here
  Mat vt(cols, std::vector<Scalar>(cols, 0)), vinv(cols, std::vector<Scalar>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) vt[i][i] = vinv[i][i] = 1 % m;

  auto colOp = [&](std::size_t ci, std::size_t cj, const Unimodular& u) {
    // columns (ci, cj) get new_ci = p col_ci + q col_cj, new_cj = r col_ci + s col_cj
    colMix(a, ci, cj, u.p, u.q, u.r, u.s, mod);
    rowMix(vt[ci], vt[cj], u.p, u.q, u.r, u.s, mod);
    // V ← V·T with T = [[p, r], [q, s]]; V⁻¹ ← T⁻¹·V⁻¹, T⁻¹ = [[ip, ir], [iq, is]]
    rowMix(vinv[ci], vinv[cj], u.ip, u.ir, u.iq, u.is, mod);
  };

  std::size_t t = 0;
  const std::size_t limit = std::min(rows, cols);
  for (; t < limit; ++t) {
    std::size_t bi = rows, bj = cols;
    Scalar bestG = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (!a[i][j]) continue;
        Scalar g = mod.gcdWith(a[i][j]);
        if (bi == rows || g < bestG) {
          bestG = g;
          bi = i;
          bj = j;
        }
      }
    if (bi == rows) break;
    std::swap(a[t], a[bi]);
    if (bj != t) colOp(t, bj, Unimodular{0, 1, 1, 0, 0, 1, 1, 0});

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (!a[i][t]) continue;
        Unimodular u = clearing(a[t][t], a[i][t], mod);
        rowMix(a[t], a[i], u.p, u.q, u.r, u.s, mod);
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (!a[t][j]) continue;
        colOp(t, j, clearing(a[t][t], a[t][j], mod));
      }
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a[i][t]) dirty = true;
      if (dirty) continue;
      auto [g, unit] = mod.unitNormalize(a[t][t]);
      if (unit != 1)
        for (auto& x : a[t]) x = mod.mul(unit, x);
      if (g == 0) break;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % g) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      simd::addMod(a[t], a[bad], m);
    }
  }

  ModSmith out;
  out.diag.assign(cols, m);
  for (std::size_t i = 0; i < t; ++i) out.diag[i] = a[i][i] ? mod.gcdWith(a[i][i]) : m;
  out.v.assign(cols, std::vector<Scalar>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.v[i][j] = vt[j][i];
  out.vInv = std::move(vinv);
  return out;
}

std::vector<std::uint64_t> IntegerSmith::torsion() const {
  std::vector<std::uint64_t> out;
  for (const auto& f : factors) {
    mpz_class z(f);
    if (z == 1) continue;
    if (!z.fits_ulong_p()) throw std::overflow_error("invariant factor exceeds 64 bits");
    out.push_back(z.get_ui());
  }
  return out;
}

namespace {

using ZRow = std::vector<std::pair<std::uint32_t, mpz_class>>;

ZRow zCombine(const ZRow& a, const mpz_class& k, const ZRow& b) {
  ZRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, k * b[j].second);
      ++j;
    } else {
      mpz_class v = a[i].second + k * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Dense Smith form over Z; returns nonzero diagonal entries (absolute values) as a divisor chain.
std::vector<mpz_class> denseSmithZ(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return diag;
      std::swap(a[t], a[bi]);
      if (bj != t)
        for (auto& r : a) std::swap(r[t], r[bj]);
      bool done = true;
      const mpz_class p = a[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), p.get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) done = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), p.get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) done = false;
      }
      if (!done) continue;
      // divisibility of the remaining block by the pivot
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), p.get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace

IntegerSmith smithFormZ(const std::vector<IntRow>& input, std::size_t cols,
                        const IntegerSmithLimits& limits) {
  if (input.size() > limits.maxDim || cols > limits.maxDim)
    throw DimensionTooLarge("integer matrix " + std::to_string(input.size()) + "x" +
                            std::to_string(cols) + " exceeds the configured limit");
  // stage 1: streaming elimination on ±1 pivots (forward only; pivot rows never
  // contain columns that became pivots earlier)
  std::vector<std::int64_t> slotOf(cols, -1);
  std::vector<ZRow> pivotRows;
  std::vector<ZRow> residual;
  for (const IntRow& raw : input) {
    std::map<std::uint32_t, mpz_class> v;
    for (const IntEntry& e : raw)
      if (e.val) v[e.col] += e.val;
    std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> order;
    for (auto& [c, x] : v)
      if (slotOf[c] >= 0 && x != 0) order.push(slotOf[c]);
    std::int64_t last = -1;
    while (!order.empty()) {
      std::int64_t s = order.top();
      order.pop();
      if (s == last) continue;
      last = s;
      const ZRow& p = pivotRows[s];
      std::uint32_t pc = p.front().first;
      auto it = v.find(pc);
      if (it == v.end() || it->second == 0) continue;
      mpz_class k = -it->second * p.front().second;  // pivot entry is ±1
      for (const auto& [c, x] : p) {
        mpz_class& slot = v[c];
        slot += k * x;
        if (slotOf[c] >= 0 && slot != 0 && slotOf[c] > s) order.push(slotOf[c]);
      }
    }
    ZRow row;
    for (auto& [c, x] : v)
      if (x != 0) row.emplace_back(c, x);
    if (row.empty()) continue;
    std::size_t pick = row.size();
    for (std::size_t i = 0; i < row.size(); ++i)
      if (abs(row[i].second) == 1) {
        pick = i;
        break;
      }
    if (pick == row.size()) {
      residual.push_back(std::move(row));
      continue;
    }
    // store with the pivot entry first
    std::rotate(row.begin(), row.begin() + pick, row.begin() + pick + 1);
    slotOf[row.front().first] = static_cast<std::int64_t>(pivotRows.size());
    pivotRows.push_back(std::move(row));
  }
  // residual rows may contain columns that became pivots after they were stored
  std::vector<std::uint32_t> freeCols;
  std::vector<std::int64_t> freeIdx(cols, -1);
  for (std::uint32_t c = 0; c < cols; ++c)
    if (slotOf[c] < 0) {
      freeIdx[c] = static_cast<std::int64_t>(freeCols.size());
      freeCols.push_back(c);
    }
  for (auto& row : residual) {
    for (;;) {
      std::size_t hit = row.size();
      std::int64_t best = -1;
      for (std::size_t i = 0; i < row.size(); ++i)
        if (slotOf[row[i].first] >= 0 && (best < 0 || slotOf[row[i].first] < best)) {
          best = slotOf[row[i].first];
          hit = i;
        }
      if (hit == row.size()) break;
      const ZRow& p = pivotRows[best];
      mpz_class k = -row[hit].second * p.front().second;
      ZRow sortedP(p.begin(), p.end());
      std::sort(sortedP.begin(), sortedP.end(), [](auto& x, auto& y) { return x.first < y.first; });
      row = zCombine(row, k, sortedP);
    }
  }
  std::vector<std::uint32_t> usedCols;
  for (const auto& row : residual)
    for (const auto& [c, x] : row) usedCols.push_back(c);
  std::sort(usedCols.begin(), usedCols.end());
  usedCols.erase(std::unique(usedCols.begin(), usedCols.end()), usedCols.end());
  if (residual.size() * usedCols.size() > limits.maxDenseResidual)
    throw DimensionTooLarge("dense integer residual " + std::to_string(residual.size()) + "x" +
                            std::to_string(usedCols.size()) + " exceeds the configured limit");
  std::vector<std::vector<mpz_class>> dense(residual.size(), std::vector<mpz_class>(usedCols.size()));
  for (std::size_t i = 0; i < residual.size(); ++i)
    for (const auto& [c, x] : residual[i]) {
      auto pos = std::lower_bound(usedCols.begin(), usedCols.end(), c) - usedCols.begin();
      dense[i][pos] = x;
    }
  std::vector<mpz_class> diag = denseSmithZ(std::move(dense));
  IntegerSmith out;
  out.rank = pivotRows.size() + diag.size();
  for (std::size_t i = 0; i < pivotRows.size(); ++i) out.factors.push_back("1");
  for (const auto& d : diag) out.factors.push_back(d.get_str());
  return out;
}

}  // namespace unram::exactla
