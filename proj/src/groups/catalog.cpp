#include "unram/groups/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace unram::groups {

ParseError::ParseError(std::size_t l, std::size_t c, const std::string& what)
    : GroupError("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l), column(c) {}

namespace {

bool isPrime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

GroupPtr fromRule(std::size_t n, std::string name, const std::function<Elem(Elem, Elem)>& rule) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[a][b] = rule(a, b);
  return FiniteGroup::fromMultTable(t, std::move(name), GroupLimits{std::max<std::size_t>(256, n)});
}

std::string joinParams(const std::vector<std::uint32_t>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

}  // namespace

GroupPtr cyclic(std::uint32_t n) {
  if (n < 1 || n > 4096) throw ParamOutOfRange("cyclic order must be in 1..4096");
  return fromRule(n, "cyclic:" + std::to_string(n), [n](Elem a, Elem b) { return (a + b) % n; });
}

GroupPtr abelian(const std::vector<std::uint32_t>& orders) {
  if (orders.empty()) throw ParamOutOfRange("abelian needs at least one factor");
  std::size_t n = 1;
  for (auto o : orders) {
    if (o < 1) throw ParamOutOfRange("abelian factor must be positive");
    n *= o;
    if (n > 4096) throw ParamOutOfRange("abelian group too large");
  }
  // mixed radix, first factor most significant
  return fromRule(n, "abelian:" + joinParams(orders), [orders](Elem a, Elem b) {
    Elem out = 0, scale = 1;
    for (std::size_t i = orders.size(); i-- > 0;) {
      Elem o = orders[i];
      out += ((a % o + b % o) % o) * scale;
      a /= o;
      b /= o;
      scale *= o;
    }
    return out;
  });
}

GroupPtr elementaryAbelian(std::uint32_t p, std::uint32_t k) {
  if (!isPrime(p)) throw ParamOutOfRange("elementaryAbelian needs a prime");
  if (k < 1) throw ParamOutOfRange("elementaryAbelian rank must be positive");
  auto g = abelian(std::vector<std::uint32_t>(k, p));
  return g;
}

GroupPtr dihedral(std::uint32_t order) {
  if (order < 2 || order % 2 || order > 512) throw ParamOutOfRange("dihedral order must be even, 2..512");
  std::uint32_t n = order / 2;
  // element r^i s^j encoded as 2i + j; s r = r^{-1} s
  return fromRule(order, "dihedral:" + std::to_string(order), [n](Elem a, Elem b) {
    Elem i = a / 2, j = a % 2, k = b / 2, l = b % 2;
    Elem rot = j ? (i + n - k) % n : (i + k) % n;
    return rot * 2 + (j ^ l);
  });
}

GroupPtr quaternion(std::uint32_t order) {
  if (order < 8 || (order & (order - 1)) || order > 512)
    throw ParamOutOfRange("quaternion order must be a power of two, 8..512");
  std::uint32_t n = order / 2;
  // a^i b^j encoded as 2i + j; b a = a^{-1} b, b^2 = a^{n/2}
  return fromRule(order, "quaternion:" + std::to_string(order), [n](Elem x, Elem y) {
    Elem i = x / 2, j = x % 2, k = y / 2, l = y % 2;
    Elem rot = j ? (i + n - k) % n : (i + k) % n;
    if (j && l) rot = (rot + n / 2) % n;
    return rot * 2 + (j ^ l);
  });
}

GroupPtr symmetric(std::uint32_t n) {
  if (n < 1 || n > 6) throw ParamOutOfRange("symmetric degree must be 1..6");
  std::string name = "symmetric:" + std::to_string(n);
  if (n == 1) return FiniteGroup::fromPermutations({{0}}, name);
  std::vector<Elem> swap(n), cycle(n);
  for (Elem i = 0; i < n; ++i) {
    swap[i] = i;
    cycle[i] = (i + 1) % n;
  }
  std::swap(swap[0], swap[1]);
  return FiniteGroup::fromPermutations({swap, cycle}, name);
}

GroupPtr alternating(std::uint32_t n) {
  if (n < 1 || n > 6) throw ParamOutOfRange("alternating degree must be 1..6");
  std::string name = "alternating:" + std::to_string(n);
  if (n < 3) return FiniteGroup::fromPermutations({{0}}, name);
  std::vector<std::vector<Elem>> gens;
  for (Elem k = 2; k < n; ++k) {
    std::vector<Elem> p(n);
    for (Elem i = 0; i < n; ++i) p[i] = i;
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return FiniteGroup::fromPermutations(gens, name);
}

GroupPtr heisenberg(std::uint32_t p) {
  if (!isPrime(p) || p > 13) throw ParamOutOfRange("heisenberg needs a prime p <= 13");
  // (a, b, c) ~ [[1,a,c],[0,1,b],[0,0,1]], encoded a*p^2 + b*p + c
  return fromRule(p * p * p, "heisenberg:" + std::to_string(p), [p](Elem x, Elem y) {
    Elem a = x / (p * p), b = (x / p) % p, c = x % p;
    Elem a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
    return ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
  });
}

GroupPtr catalog(std::string_view family, const std::vector<std::uint32_t>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw ParamOutOfRange(std::string(family) + " expects " + std::to_string(k) + " parameter(s)");
  };
  if (family == "trivial") {
    need(0);
    return cyclic(1);
  }
  if (family == "cyclic") return need(1), cyclic(params[0]);
  if (family == "elementaryAbelian") return need(2), elementaryAbelian(params[0], params[1]);
  if (family == "abelian") return abelian(params);
  if (family == "dihedral") return need(1), dihedral(params[0]);
  if (family == "quaternion") return need(1), quaternion(params[0]);
  if (family == "symmetric") return need(1), symmetric(params[0]);
  if (family == "alternating") return need(1), alternating(params[0]);
  if (family == "heisenberg") return need(1), heisenberg(params[0]);
  throw UnknownFamily("unknown group family '" + std::string(family) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::uint32_t> parseParams(std::string_view s) {
  std::vector<std::uint32_t> out;
  std::string buf(s);
  std::stringstream ss(buf);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string_view t = trim(item);
    if (t.empty()) throw ParamOutOfRange("empty parameter");
    std::uint64_t v = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParamOutOfRange("parameter '" + std::string(t) + "' is not a number");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > 1'000'000) throw ParamOutOfRange("parameter too large");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace

GroupPtr catalogFromString(std::string_view spec) {
  spec = trim(spec);
  constexpr std::string_view dp = "directProduct(";
  if (spec.substr(0, dp.size()) == dp) {
    if (spec.back() != ')') throw ParamOutOfRange("directProduct(...) is missing ')'");
    std::string_view inner = spec.substr(dp.size(), spec.size() - dp.size() - 1);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        // a comma may also separate parameters: split only where the right side starts a family name
        std::string_view rest = trim(inner.substr(i + 1));
        if (rest.empty() || !std::isalpha(static_cast<unsigned char>(rest.front()))) continue;
        GroupPtr a = catalogFromString(inner.substr(0, i));
        GroupPtr b = catalogFromString(rest);
        return directProduct(a, b, "directProduct(" + a->name() + "," + b->name() + ")");
      }
    }
    throw ParamOutOfRange("directProduct needs two factors");
  }
  auto colon = spec.find(':');
  std::string_view family = trim(spec.substr(0, colon));
  std::vector<std::uint32_t> params;
  if (colon != std::string_view::npos) params = parseParams(spec.substr(colon + 1));
  return catalog(family, params);
}

std::vector<std::string> catalogUpTo(std::uint32_t maxOrder) {
  std::vector<std::pair<std::uint32_t, std::string>> items;
  auto add = [&](std::uint32_t order, std::string s) {
    if (order <= maxOrder) items.emplace_back(order, std::move(s));
  };
  for (std::uint32_t n = 1; n <= maxOrder; ++n) add(n, n == 1 ? "trivial" : "cyclic:" + std::to_string(n));
  // non-cyclic abelian groups as divisor chains n1 | n2 | ... with at least two factors
  std::function<void(std::vector<std::uint32_t>&, std::uint32_t)> chains = [&](std::vector<std::uint32_t>& cur,
                                                                               std::uint32_t prod) {
    if (cur.size() >= 2) {
      std::string s = "abelian:";
      for (std::size_t i = 0; i < cur.size(); ++i) s += (i ? "," : "") + std::to_string(cur[i]);
      add(prod, s);
    }
    std::uint32_t last = cur.empty() ? 2 : cur.back();
    for (std::uint32_t k = last; prod * k <= maxOrder; k += (cur.empty() ? 1 : last))
      if (cur.empty() || k % last == 0) {
        cur.push_back(k);
        chains(cur, prod * k);
        cur.pop_back();
      }
  };
  std::vector<std::uint32_t> cur;
  chains(cur, 1);
  for (std::uint32_t n = 3; 2 * n <= maxOrder; ++n) add(2 * n, "dihedral:" + std::to_string(2 * n));
  for (std::uint32_t q = 8; q <= maxOrder; q *= 2) add(q, "quaternion:" + std::to_string(q));
  for (std::uint32_t n = 3; n <= 6; ++n) {
    std::uint32_t f = 1;
    for (std::uint32_t i = 2; i <= n; ++i) f *= i;
    add(f, "symmetric:" + std::to_string(n));
    if (n >= 4) add(f / 2, "alternating:" + std::to_string(n));
  }
  for (std::uint32_t p : {3u, 5u, 7u}) add(p * p * p, "heisenberg:" + std::to_string(p));
  // non-abelian factors times cyclic groups
  std::vector<std::pair<std::uint32_t, std::string>> bases;
  for (const auto& [o, s] : items)
    if (s.rfind("dihedral", 0) == 0 || s.rfind("quaternion", 0) == 0 || s.rfind("symmetric", 0) == 0 ||
        s.rfind("alternating", 0) == 0 || s.rfind("heisenberg", 0) == 0)
      bases.emplace_back(o, s);
  for (const auto& [o, s] : bases)
    for (std::uint32_t k = 2; o * k <= maxOrder; ++k)
      add(o * k, "directProduct(" + s + ",cyclic:" + std::to_string(k) + ")");
  std::stable_sort(items.begin(), items.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto& [o, s] : items)
    if (seen.insert(s).second) out.push_back(s);
  return out;
}

std::vector<Elem> parseCycles(std::string_view text, std::size_t line, std::size_t column) {
  std::vector<std::vector<Elem>> cycles;
  std::size_t i = 0;
  Elem maxPoint = 0;
  bool any = false;
  auto fail = [&](const std::string& msg) { throw ParseError(line, column + i, msg); };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') fail("expected '(' in cycle notation");
    ++i;
    std::vector<Elem> cyc;
    for (;;) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point index");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > 100000) fail("point index too large");
        ++i;
      }
      cyc.push_back(static_cast<Elem>(v));
      maxPoint = std::max(maxPoint, static_cast<Elem>(v));
      any = true;
    }
    cycles.push_back(std::move(cyc));
  }
  std::vector<Elem> img(any ? maxPoint + 1 : 1);
  for (Elem p = 0; p < img.size(); ++p) img[p] = p;
  std::vector<char> used(img.size(), 0);
  // apply cycles left to right (each moves its points one step)
  for (const auto& cyc : cycles) {
    for (Elem p : cyc) {
      if (used[p]) throw ParseError(line, column, "point " + std::to_string(p) + " repeated across cycles");
      used[p] = 1;
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
  }
  return img;
}

GroupPtr parseGroupText(std::string_view text, const GroupLimits& limits) {
  std::vector<std::string> lines;
  {
    std::string buf(text);
    std::stringstream ss(buf);
    std::string l;
    while (std::getline(ss, l)) lines.push_back(l);
  }
  std::string name;
  std::vector<std::vector<Elem>> perms;
  std::vector<std::vector<Elem>> table;
  bool inTable = false;
  GroupPtr fromCatalog;
  std::size_t headerLine = 0;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view raw = lines[ln];
    auto hash = raw.find('#');
    std::string_view body = raw.substr(0, hash);
    std::size_t lead = 0;
    while (lead < body.size() && std::isspace(static_cast<unsigned char>(body[lead]))) ++lead;
    std::string_view t = trim(body);
    if (t.empty()) continue;
    const std::size_t lineNo = ln + 1, col = lead + 1;
    auto word = t.substr(0, t.find_first_of(" \t"));
    std::string_view rest = trim(t.substr(word.size()));
    std::size_t restCol = col + (t.size() - rest.size());
    if (word == "group") {
      if (headerLine) throw ParseError(lineNo, col, "duplicate 'group' header");
      if (rest.empty()) throw ParseError(lineNo, col + 5, "missing group name");
      name = std::string(rest);
      headerLine = lineNo;
      inTable = false;
    } else if (!headerLine) {
      throw ParseError(lineNo, col, "expected 'group <name>' header");
    } else if (word == "perm") {
      if (inTable || !table.empty() || fromCatalog) throw ParseError(lineNo, col, "cannot mix 'perm' with other group bodies");
      perms.push_back(parseCycles(rest, lineNo, restCol));
    } else if (word == "table") {
      if (!perms.empty() || fromCatalog || inTable) throw ParseError(lineNo, col, "unexpected 'table'");
      inTable = true;
    } else if (word == "catalog") {
      if (!perms.empty() || inTable || fromCatalog) throw ParseError(lineNo, col, "cannot mix 'catalog' with other group bodies");
      try {
        fromCatalog = catalogFromString(rest);
      } catch (const ParseError&) {
        throw;
      } catch (const GroupError& e) {
        throw ParseError(lineNo, restCol, e.what());
      }
    } else if (inTable) {
      std::vector<Elem> row;
      std::stringstream ss{std::string(t)};
      std::string tok;
      while (ss >> tok) {
        if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
            tok.size() > 6)
          throw ParseError(lineNo, col, "table entries must be element indices");
        row.push_back(static_cast<Elem>(std::stoul(tok)));
      }
      table.push_back(std::move(row));
    } else {
      throw ParseError(lineNo, col, "unknown directive '" + std::string(word) + "'");
    }
  }
  if (!headerLine) throw ParseError(1, 1, "missing 'group <name>' header");
  try {
    if (fromCatalog) {
      if (fromCatalog->order() > limits.maxOrder) throw GroupError("group order exceeds the configured maximum");
      // rebuild under the file's name with identical table bytes
      std::vector<std::vector<Elem>> t(fromCatalog->order(), std::vector<Elem>(fromCatalog->order()));
      for (Elem a = 0; a < t.size(); ++a)
        for (Elem b = 0; b < t.size(); ++b) t[a][b] = fromCatalog->mul(a, b);
      return FiniteGroup::fromMultTable(t, name, limits);
    }
    if (inTable) {
      if (table.empty()) throw ParseError(headerLine, 1, "empty table");
      return FiniteGroup::fromMultTable(table, name, limits);
    }
    if (perms.empty()) throw ParseError(headerLine, 1, "group body missing: expected perm, table or catalog");
    return FiniteGroup::fromPermutations(perms, name, limits);
  } catch (const ParseError&) {
    throw;
  }
}

GroupPtr loadGroupFile(const std::string& path, const GroupLimits& limits) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open group file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseGroupText(ss.str(), limits);
}

}  // namespace unram::groups
