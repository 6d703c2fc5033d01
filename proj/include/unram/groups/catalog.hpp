#pragma once

#include "unram/groups/group.hpp"

#include <string_view>

namespace unram::groups {

class UnknownFamily : public GroupError {
 public:
  using GroupError::GroupError;
};
class ParamOutOfRange : public GroupError {
 public:
  using GroupError::GroupError;
};
class ParseError : public GroupError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line, column;
};

GroupPtr cyclic(std::uint32_t n);
GroupPtr elementaryAbelian(std::uint32_t p, std::uint32_t k);
GroupPtr abelian(const std::vector<std::uint32_t>& orders);
GroupPtr dihedral(std::uint32_t order);    // order 2n
GroupPtr quaternion(std::uint32_t order);  // generalized quaternion of order 2^k, k >= 3
GroupPtr symmetric(std::uint32_t n);
GroupPtr alternating(std::uint32_t n);
GroupPtr heisenberg(std::uint32_t p);      // unitriangular 3x3 over Z/p

GroupPtr catalog(std::string_view family, const std::vector<std::uint32_t>& params);
// "dihedral:8", "abelian:2,4", "directProduct(dihedral:8,cyclic:2)"
GroupPtr catalogFromString(std::string_view spec);

// Catalog members of order <= maxOrder in a fixed order, one per distinct
// catalog description (isomorphic duplicates are possible).
std::vector<std::string> catalogUpTo(std::uint32_t maxOrder);

// Group file: "group <name>" then perm lines, a table block, or a catalog line.
GroupPtr parseGroupText(std::string_view text, const GroupLimits& limits = {});
GroupPtr loadGroupFile(const std::string& path, const GroupLimits& limits = {});
// "(0 1 2)(3 4)" -> image array
std::vector<Elem> parseCycles(std::string_view cycles, std::size_t line = 0, std::size_t column = 0);

}  // namespace unram::groups
