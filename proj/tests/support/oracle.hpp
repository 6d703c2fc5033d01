#pragma once

// Reader for the frozen computer-algebra oracle (tests/oracle/expected.txt).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Invariants = std::vector<std::uint64_t>;

struct Row {
  Invariants schur, b0, h1z, h2z, h3z, h4z;
};

// Abelian invariants in any form (prime powers or a chain) -> ascending chain.
inline Invariants toChain(const Invariants& parts) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> byPrime;
  for (std::uint64_t v : parts) {
    for (std::uint64_t p = 2; v > 1; ++p) {
      std::uint64_t q = 1;
      while (v % p == 0) {
        v /= p;
        q *= p;
      }
      if (q > 1) byPrime[p].push_back(q);
    }
  }
  std::size_t len = 0;
  for (auto& [p, qs] : byPrime) {
    std::sort(qs.rbegin(), qs.rend());
    len = std::max(len, qs.size());
  }
  Invariants chain(len, 1);
  for (auto& [p, qs] : byPrime)
    for (std::size_t i = 0; i < qs.size(); ++i) chain[len - 1 - i] *= qs[i];
  return chain;
}

inline std::string oracleText() {
  std::ifstream in(UNRAM_ORACLE_FILE);
  if (!in) throw std::runtime_error("cannot open oracle file");
  std::stringstream ss;
  ss << in.rdbuf();
  // GAP wraps long lines
  std::string s = ss.str();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\n' && i + 1 < s.size() && s[i + 1] == '[') {
      out += ' ';
      continue;
    }
    out += s[i];
  }
  return out;
}

inline Invariants parseList(const std::string& s) {
  Invariants v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" []");
    if (b == std::string::npos) continue;
    v.push_back(std::stoull(tok.substr(b)));
  }
  return v;
}

inline std::map<std::string, Row> rows() {
  std::map<std::string, Row> out;
  std::stringstream ss(oracleText());
  std::string line;
  std::regex re(R"((\S+) schur (\[[^\]]*\]) B0 (\[[^\]]*\]) H1Z (\[[^\]]*\]) H2Z (\[[^\]]*\]) H3Z (\[[^\]]*\]) H4Z\s+(\[[^\]]*\]))");
  while (std::getline(ss, line)) {
    std::smatch m;
    if (!std::regex_search(line, m, re)) continue;
    out[m[1]] = {parseList(m[2]), parseList(m[3]), parseList(m[4]), parseList(m[5]), parseList(m[6]), parseList(m[7])};
  }
  return out;
}

inline std::uint64_t order(const Invariants& v) {
  std::uint64_t o = 1;
  for (auto x : v) o *= x;
  return o;
}

// catalog description for each oracle name
inline const std::map<std::string, std::string>& catalogNames() {
  static const std::map<std::string, std::string> m = {
      {"Z2xZ2", "abelian:2,2"},   {"Z3xZ3", "abelian:3,3"},   {"Z4xZ4", "abelian:4,4"},
      {"Q8", "quaternion:8"},     {"D8", "dihedral:8"},       {"A4", "alternating:4"},
      {"S4", "symmetric:4"},      {"S3", "symmetric:3"},      {"Heis3", "heisenberg:3"},
      {"Z2^3", "elementaryAbelian:2,3"}, {"Q16", "quaternion:16"}, {"D16", "dihedral:16"}};
  return m;
}

inline std::uint64_t witnessB0Order() {
  std::regex re(R"(witness order 64 id \[ 64, (\d+) \] B0 (\[[^\]]*\]))");
  std::smatch m;
  std::string t = oracleText();
  if (!std::regex_search(t, m, re)) throw std::runtime_error("witness line missing from oracle");
  return order(parseList(m[2]));
}

inline int nontrivialB0UpTo32() {
  std::regex re(R"(order <= 32 with nontrivial B0: (\d+))");
  std::smatch m;
  std::string t = oracleText();
  if (!std::regex_search(t, m, re)) throw std::runtime_error("B0 census missing from oracle");
  return std::stoi(m[1]);
}

}  // namespace oracle
