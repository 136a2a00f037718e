#include "scpkit/name.hpp"

namespace scp {

Name fresh(const NameSet& avoid, std::string_view base) {
  Name candidate{std::string(base), 0};
  while (avoid.count(candidate) != 0) candidate.uid++;
  return candidate;
}

std::string to_string(const Name& n) {
  if (n.uid == 0) return n.base;
  return n.base + "_" + std::to_string(n.uid);
}

NameSet set_union(const NameSet& a, const NameSet& b) {
  NameSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

NameSet set_minus(const NameSet& a, const Name& n) {
  NameSet out = a;
  out.erase(n);
  return out;
}

}  // namespace scp
