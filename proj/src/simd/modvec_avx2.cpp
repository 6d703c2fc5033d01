#include "unram/simd/modvec.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#define UNRAM_HAVE_AVX2 1
#else
#define UNRAM_HAVE_AVX2 0
#endif

namespace unram::simd::avx2 {

#if UNRAM_HAVE_AVX2
namespace {

constexpr std::uint32_t kMaxLaneModulus = 65535;

// Barrett constant floor(2^32 / m); valid for 2 <= m < 2^16 and inputs < 2^32.
struct Barrett {
  __m256i mu, m;
  explicit Barrett(std::uint32_t mod)
      : mu(_mm256_set1_epi64x(static_cast<long long>((std::uint64_t(1) << 32) / mod))),
        m(_mm256_set1_epi32(static_cast<int>(mod))) {}

  __m256i reduce(__m256i x) const {
    __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(x, mu), 32);
    __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), mu);
    odd = _mm256_and_si256(odd, _mm256_set1_epi64x(static_cast<long long>(0xFFFFFFFF00000000ULL)));
    __m256i q = _mm256_or_si256(even, odd);
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, m));
    return _mm256_min_epu32(r, _mm256_sub_epi32(r, m));
  }
};

bool laneFriendly(std::uint32_t m) { return m >= 2 && m <= kMaxLaneModulus; }

}  // namespace

bool available() { return __builtin_cpu_supports("avx2"); }

void axpyMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
             std::uint32_t a, std::uint32_t m) {
  if (!laneFriendly(m)) return scalar::axpyMod(dst, src, a, m);
  a %= m;
  Barrett br(m);
  const __m256i va = _mm256_set1_epi32(static_cast<int>(a));
  std::size_t i = 0, n = dst.size();
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    __m256i t = _mm256_add_epi32(d, _mm256_mullo_epi32(va, s));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), br.reduce(t));
  }
  scalar::axpyMod(dst.subspan(i), src.subspan(i), a, m);
}

void scaleMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t a, std::uint32_t m) {
  if (!laneFriendly(m)) return scalar::scaleMod(dst, src, a, m);
  a %= m;
  Barrett br(m);
  const __m256i va = _mm256_set1_epi32(static_cast<int>(a));
  std::size_t i = 0, n = dst.size();
  for (; i + 8 <= n; i += 8) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i),
                        br.reduce(_mm256_mullo_epi32(va, s)));
  }
  scalar::scaleMod(dst.subspan(i), src.subspan(i), a, m);
}

void addMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t m) {
  if (!laneFriendly(m)) return scalar::addMod(dst, src, m);
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  std::size_t i = 0, n = dst.size();
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    __m256i t = _mm256_add_epi32(d, s);
    t = _mm256_min_epu32(t, _mm256_sub_epi32(t, vm));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), t);
  }
  scalar::addMod(dst.subspan(i), src.subspan(i), m);
}

void reduceMod(std::span<std::uint32_t> dst, std::span<const std::uint64_t> src, std::uint32_t m) {
  // 64-bit inputs have no lane-wide Barrett in AVX2; only the narrow case is vectorized.
  if (!laneFriendly(m)) return scalar::reduceMod(dst, src, m);
  Barrett br(m);
  std::size_t i = 0, n = dst.size();
  const __m256i perm = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  for (; i + 8 <= n; i += 8) {
    __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i + 4));
    __m256i hiBits = _mm256_or_si256(_mm256_srli_epi64(lo, 32), _mm256_srli_epi64(hi, 32));
    if (!_mm256_testz_si256(hiBits, hiBits)) {
      scalar::reduceMod(dst.subspan(i, 8), src.subspan(i, 8), m);
      continue;
    }
    // pack the low halves: lanes 0,2,4,6 of lo and hi
    __m256i a = _mm256_permutevar8x32_epi32(lo, perm);
    __m256i b = _mm256_permutevar8x32_epi32(hi, perm);
    __m256i packed = _mm256_permute2x128_si256(a, b, 0x20);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), br.reduce(packed));
  }
  scalar::reduceMod(dst.subspan(i), src.subspan(i), m);
}

std::uint32_t dotMod(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                     std::uint32_t m) {
  if (!laneFriendly(m)) return scalar::dotMod(x, y, m);
  Barrett br(m);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0, n = x.size();
  for (; i + 8 <= n; i += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x.data() + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y.data() + i));
    acc = br.reduce(_mm256_add_epi32(acc, br.reduce(_mm256_mullo_epi32(a, b))));
  }
  alignas(32) std::uint32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = 0;
  for (std::uint32_t v : lanes) total += v;
  total += scalar::dotMod(x.subspan(i), y.subspan(i), m);
  return static_cast<std::uint32_t>(total % m);
}

#else

bool available() { return false; }
void axpyMod(std::span<std::uint32_t> d, std::span<const std::uint32_t> s, std::uint32_t a,
             std::uint32_t m) { scalar::axpyMod(d, s, a, m); }
void scaleMod(std::span<std::uint32_t> d, std::span<const std::uint32_t> s, std::uint32_t a,
              std::uint32_t m) { scalar::scaleMod(d, s, a, m); }
void addMod(std::span<std::uint32_t> d, std::span<const std::uint32_t> s, std::uint32_t m) {
  scalar::addMod(d, s, m);
}
void reduceMod(std::span<std::uint32_t> d, std::span<const std::uint64_t> s, std::uint32_t m) {
  scalar::reduceMod(d, s, m);
}
std::uint32_t dotMod(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                     std::uint32_t m) { return scalar::dotMod(x, y, m); }

#endif

}  // namespace unram::simd::avx2
