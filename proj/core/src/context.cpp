#include "scpkit/context.hpp"

#include <algorithm>
#include <map>

namespace scp {

bool TypingContext::contains(const Name& n) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.first == n; });
}

std::optional<SessionType> TypingContext::lookup(const Name& n) const {
  for (const auto& [name, ty] : entries_)
    if (name == n) return ty;
  return std::nullopt;
}

NameSet TypingContext::domain() const {
  NameSet out;
  for (const auto& [name, ty] : entries_) out.insert(name);
  return out;
}

std::optional<TypingContext> TypingContext::extended(const Name& n, const SessionType& t) const {
  if (contains(n)) return std::nullopt;
  auto es = entries_;
  es.emplace_back(n, t);
  return TypingContext(std::move(es));
}

std::optional<TypingContext> TypingContext::inserted(std::size_t pos, const Name& n,
                                                     const SessionType& t) const {
  if (contains(n) || pos > entries_.size()) return std::nullopt;
  auto es = entries_;
  es.insert(es.begin() + static_cast<std::ptrdiff_t>(pos), {n, t});
  return TypingContext(std::move(es));
}

TypingContext TypingContext::without(const Name& n) const {
  std::vector<Entry> es;
  es.reserve(entries_.size());
  for (const auto& e : entries_)
    if (!(e.first == n)) es.push_back(e);
  return TypingContext(std::move(es));
}

TypingContext TypingContext::restricted(const NameSet& keep) const {
  std::vector<Entry> es;
  for (const auto& e : entries_)
    if (keep.count(e.first)) es.push_back(e);
  return TypingContext(std::move(es));
}

std::optional<TypingContext> TypingContext::retyped(const Name& n, const SessionType& t) const {
  auto es = entries_;
  for (auto& e : es)
    if (e.first == n) {
      e.second = t;
      return TypingContext(std::move(es));
    }
  return std::nullopt;
}

TypingContext TypingContext::renamed(const Name& from, const Name& to) const {
  auto es = entries_;
  for (auto& e : es)
    if (e.first == from) e.first = to;
  return TypingContext(std::move(es));
}

bool TypingContext::same_as(const TypingContext& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  std::map<Name, SessionType> a, b;
  for (const auto& e : entries_) a.insert(e);
  for (const auto& e : other.entries_) b.insert(e);
  return a == b;
}

}  // namespace scp
