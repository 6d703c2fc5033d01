#include "unram/exactla/modular.hpp"

namespace unram::exactla {

std::int64_t extendedGcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t r = a - q * b;
    a = b;
    b = r;
    std::int64_t ns = s0 - q * s1;
    s0 = s1;
    s1 = ns;
    std::int64_t nt = t0 - q * t1;
    t0 = t1;
    t1 = nt;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

Scalar Modulus::inverse(Scalar a) const {
  std::int64_t s, t;
  if (extendedGcd(a, m_, s, t) != 1) throw std::domain_error("not a unit");
  return fromInt(s);
}

std::pair<Scalar, Scalar> Modulus::unitNormalize(Scalar a) const {
  a %= m_;
  if (a == 0) return {0, 1};
  Scalar g = gcdWith(a);
  Scalar mp = m_ / g;
  if (mp == 1) return {0, 1};
  Scalar ap = a / g;
  std::int64_t s, t;
  extendedGcd(ap, mp, s, t);
  std::int64_t u0 = s % static_cast<std::int64_t>(mp);
  if (u0 < 0) u0 += mp;
  // lift u0 mod m/g to a unit mod m
  for (std::uint64_t u = static_cast<std::uint64_t>(u0); u < m_ + std::uint64_t(mp); u += mp) {
    if (u == 0) continue;
    if (std::gcd(static_cast<Scalar>(u % m_), m_) == 1) return {g, static_cast<Scalar>(u % m_)};
  }
  throw std::logic_error("unit lift not found");
}

bool Modulus::divide(Scalar b, Scalar a, Scalar& x) const {
  b %= m_;
  a %= m_;
  if (b == 0) {
    x = 0;
    return true;
  }
  auto [g, u] = unitNormalize(a);
  if (g == 0 || b % g != 0) return false;
  // u*a = g, so a * (u*b/g) = b
  x = mul(u, b / g);
  return true;
}

}  // namespace unram::exactla
