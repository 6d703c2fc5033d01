#pragma once
// Little helpers for the binary cache format. Values are written in host byte
// order; cache files are not meant to move between machines.

#include "unram/exactla/howell.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace unram::exactla::binio {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
void put(std::ostream& out, const T& v) {
  static_assert(std::is_trivially_copyable_v<T>);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  static_assert(std::is_trivially_copyable_v<T>);
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw FormatError("truncated stream");
  return v;
}

inline constexpr std::uint64_t kMaxLength = std::uint64_t(1) << 32;

template <class T>
void putVec(std::ostream& out, const std::vector<T>& v) {
  put<std::uint64_t>(out, v.size());
  if (!v.empty()) out.write(reinterpret_cast<const char*>(v.data()), sizeof(T) * v.size());
}

template <class T>
std::vector<T> getVec(std::istream& in) {
  auto n = get<std::uint64_t>(in);
  if (n > kMaxLength) throw FormatError("implausible vector length");
  std::vector<T> v(n);
  if (n && !in.read(reinterpret_cast<char*>(v.data()), sizeof(T) * n)) throw FormatError("truncated stream");
  return v;
}

inline void putRows(std::ostream& out, const std::vector<SparseRow>& rows) {
  put<std::uint64_t>(out, rows.size());
  for (const auto& r : rows) putVec(out, r);
}

inline std::vector<SparseRow> getRows(std::istream& in) {
  auto n = get<std::uint64_t>(in);
  if (n > kMaxLength) throw FormatError("implausible row count");
  std::vector<SparseRow> rows(n);
  for (auto& r : rows) r = getVec<Entry>(in);
  return rows;
}

inline void putString(std::ostream& out, const std::string& s) {
  put<std::uint64_t>(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string getString(std::istream& in) {
  auto n = get<std::uint64_t>(in);
  if (n > kMaxLength) throw FormatError("implausible string length");
  std::string s(n, '\0');
  if (n && !in.read(s.data(), static_cast<std::streamsize>(n))) throw FormatError("truncated stream");
  return s;
}

inline void putBasis(std::ostream& out, const HowellBasis& b) {
  put<std::uint32_t>(out, b.modulus().value());
  put<std::uint64_t>(out, b.dim());
  putRows(out, b.rows());
}

inline HowellBasis getBasis(std::istream& in) {
  auto m = get<std::uint32_t>(in);
  auto dim = get<std::uint64_t>(in);
  try {
    return HowellBasis(Modulus(m), dim, getRows(in));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace unram::exactla::binio
