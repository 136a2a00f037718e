#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "scpkit/name.hpp"
#include "scpkit/session_type.hpp"

namespace scp {

// An ordered name |-> type map. Order is kept for deterministic printing;
// exchange is realized by name-keyed lookup, never by reordering.
class TypingContext {
 public:
  using Entry = std::pair<Name, SessionType>;

  TypingContext() = default;
  explicit TypingContext(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool contains(const Name& n) const;
  std::optional<SessionType> lookup(const Name& n) const;
  NameSet domain() const;

  // All of these reject duplicate names by returning nullopt.
  std::optional<TypingContext> extended(const Name& n, const SessionType& t) const;
  std::optional<TypingContext> inserted(std::size_t pos, const Name& n, const SessionType& t) const;

  TypingContext without(const Name& n) const;
  TypingContext restricted(const NameSet& keep) const;
  std::optional<TypingContext> retyped(const Name& n, const SessionType& t) const;
  TypingContext renamed(const Name& from, const Name& to) const;

  // Same name/type associations regardless of entry order.
  bool same_as(const TypingContext& other) const;

  friend bool operator==(const TypingContext& a, const TypingContext& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace scp
