#include "unram/simd/modvec.hpp"

#include <atomic>

namespace unram::simd {

namespace {

Isa probe() { return avx2::available() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{probe()};
  return isa;
}

bool useAvx2() { return current().load(std::memory_order_relaxed) == Isa::Avx2; }

}  // namespace

Isa detectedIsa() { return probe(); }
Isa activeIsa() { return current().load(); }

void forceIsa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2::available()) return;
  current().store(isa);
}

const char* isaName(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void axpyMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
             std::uint32_t a, std::uint32_t m) {
  if (m == 1) { for (auto& v : dst) v = 0; return; }
  useAvx2() ? avx2::axpyMod(dst, src, a, m) : scalar::axpyMod(dst, src, a, m);
}

void scaleMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t a, std::uint32_t m) {
  if (m == 1) { for (auto& v : dst) v = 0; return; }
  useAvx2() ? avx2::scaleMod(dst, src, a, m) : scalar::scaleMod(dst, src, a, m);
}

void addMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t m) {
  if (m == 1) { for (auto& v : dst) v = 0; return; }
  useAvx2() ? avx2::addMod(dst, src, m) : scalar::addMod(dst, src, m);
}

void reduceMod(std::span<std::uint32_t> dst, std::span<const std::uint64_t> src, std::uint32_t m) {
  useAvx2() ? avx2::reduceMod(dst, src, m) : scalar::reduceMod(dst, src, m);
}

std::uint32_t dotMod(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                     std::uint32_t m) {
  if (m == 1) return 0;
  return useAvx2() ? avx2::dotMod(x, y, m) : scalar::dotMod(x, y, m);
}

void outerMod(std::span<std::uint32_t> out, std::span<const std::uint32_t> x,
              std::span<const std::uint32_t> y, std::uint32_t m) {
  const std::size_t ny = y.size();
  for (std::size_t i = 0; i < x.size(); ++i) scaleMod(out.subspan(i * ny, ny), y, x[i], m);
}

}  // namespace unram::simd
