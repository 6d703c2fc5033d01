#pragma once
// Dense vector kernels over Z/m on 32-bit lanes.
//
// Every kernel has a portable scalar reference in unram::simd::scalar and an
// AVX2 variant in unram::simd::avx2. The unqualified entry points dispatch at
// runtime. The AVX2 variants handle m <= 65535 and fall back to the scalar
// code for larger moduli.

#include <cstddef>
#include <cstdint>
#include <span>

namespace unram::simd {

enum class Isa { Scalar, Avx2 };

Isa detectedIsa();
Isa activeIsa();
// Tests use this to pin a variant; requesting Avx2 on a CPU without it is ignored.
void forceIsa(Isa isa);
const char* isaName(Isa isa);

// dst[i] = (dst[i] + a*src[i]) mod m
void axpyMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
             std::uint32_t a, std::uint32_t m);
// dst[i] = (a*src[i]) mod m
void scaleMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t a, std::uint32_t m);
// dst[i] = (dst[i] + src[i]) mod m
void addMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t m);
// dst[i] = src[i] mod m
void reduceMod(std::span<std::uint32_t> dst, std::span<const std::uint64_t> src, std::uint32_t m);
// sum x[i]*y[i] mod m
std::uint32_t dotMod(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                     std::uint32_t m);
// out[i*ny + j] = x[i]*y[j] mod m
void outerMod(std::span<std::uint32_t> out, std::span<const std::uint32_t> x,
              std::span<const std::uint32_t> y, std::uint32_t m);

namespace scalar {
void axpyMod(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t, std::uint32_t);
void scaleMod(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t, std::uint32_t);
void addMod(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t);
void reduceMod(std::span<std::uint32_t>, std::span<const std::uint64_t>, std::uint32_t);
std::uint32_t dotMod(std::span<const std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t);
}  // namespace scalar

namespace avx2 {
bool available();
void axpyMod(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t, std::uint32_t);
void scaleMod(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t, std::uint32_t);
void addMod(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t);
void reduceMod(std::span<std::uint32_t>, std::span<const std::uint64_t>, std::uint32_t);
std::uint32_t dotMod(std::span<const std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t);
}  // namespace avx2

}  // namespace unram::simd
