#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>

namespace scp {

// A channel name: a base identifier plus a freshness index. Two names are
// the same channel iff both components agree.
struct Name {
  std::string base;
  std::uint32_t uid = 0;

  friend auto operator<=>(const Name&, const Name&) = default;
};

using NameSet = std::set<Name>;

// Smallest uid that makes (base, uid) avoid the given set. Deterministic in
// its inputs; there is no hidden counter.
Name fresh(const NameSet& avoid, std::string_view base);

std::string to_string(const Name& n);

NameSet set_union(const NameSet& a, const NameSet& b);
NameSet set_minus(const NameSet& a, const Name& n);

}  // namespace scp
