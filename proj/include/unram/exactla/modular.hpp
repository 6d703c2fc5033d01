#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace unram::exactla {

using Scalar = std::uint32_t;

inline constexpr std::uint64_t kMaxModulus = std::uint64_t(1) << 31;

// Arithmetic in Z/m for 1 <= m <= 2^31. Values are kept in [0, m).
class Modulus {
 public:
  Modulus() = default;
  explicit Modulus(std::uint64_t m) : m_(static_cast<Scalar>(m)) {
    if (m == 0 || m > kMaxModulus) throw std::invalid_argument("modulus out of range");
  }

  Scalar value() const { return m_; }
  bool operator==(const Modulus& o) const { return m_ == o.m_; }

  Scalar reduce(std::uint64_t x) const { return static_cast<Scalar>(x % m_); }
  Scalar fromInt(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(m_);
    return static_cast<Scalar>(r < 0 ? r + m_ : r);
  }
  Scalar add(Scalar a, Scalar b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Scalar>(s >= m_ ? s - m_ : s);
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : static_cast<Scalar>(a + (m_ - b)); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : m_ - a; }
  Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>(std::uint64_t(a) * b % m_); }

  Scalar gcdWith(Scalar a) const { return static_cast<Scalar>(std::gcd(a, m_)); }
  bool isUnit(Scalar a) const { return std::gcd(a, m_) == 1; }
  // m / gcd(a, m): the additive order of a
  Scalar additiveOrder(Scalar a) const { return m_ / static_cast<Scalar>(std::gcd(a, m_)); }

  Scalar inverse(Scalar a) const;
  // Returns (g, u): g = gcd(a, m) (0 for a = 0), u a unit with u*a = g.
  std::pair<Scalar, Scalar> unitNormalize(Scalar a) const;
  // Solve a*x = b; returns false when b is not in the ideal (a).
  bool divide(Scalar b, Scalar a, Scalar& x) const;

 private:
  Scalar m_ = 1;
};

// Extended Euclid on signed integers: returns g = s*a + t*b, g >= 0.
std::int64_t extendedGcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t);

}  // namespace unram::exactla
