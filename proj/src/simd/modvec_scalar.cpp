#include "unram/simd/modvec.hpp"

namespace unram::simd::scalar {

void axpyMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
             std::uint32_t a, std::uint32_t m) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = static_cast<std::uint32_t>((dst[i] + std::uint64_t(a) * src[i]) % m);
}

void scaleMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t a, std::uint32_t m) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = static_cast<std::uint32_t>(std::uint64_t(a) * src[i] % m);
}

void addMod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t m) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = static_cast<std::uint32_t>((std::uint64_t(dst[i]) + src[i]) % m);
}

void reduceMod(std::span<std::uint32_t> dst, std::span<const std::uint64_t> src, std::uint32_t m) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<std::uint32_t>(src[i] % m);
}

std::uint32_t dotMod(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                     std::uint32_t m) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = (acc + std::uint64_t(x[i]) * y[i]) % m;
  return static_cast<std::uint32_t>(acc);
}

}  // namespace unram::simd::scalar
