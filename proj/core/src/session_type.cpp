#include "scpkit/session_type.hpp"

#include <algorithm>
#include <vector>

namespace scp {

namespace {
const SessionType& unit_one() {
  static const SessionType t = SessionType::one();
  return t;
}
const SessionType& unit_bot() {
  static const SessionType t = SessionType::bot();
  return t;
}
}  // namespace

SessionType SessionType::one() {
  static const auto n = std::make_shared<const Node>(Node{TypeTag::One, nullptr, nullptr});
  return SessionType(n);
}

SessionType SessionType::bot() {
  static const auto n = std::make_shared<const Node>(Node{TypeTag::Bot, nullptr, nullptr});
  return SessionType(n);
}

SessionType SessionType::tensor(SessionType a, SessionType b) {
  return SessionType(std::make_shared<const Node>(Node{TypeTag::Tensor, a.node_, b.node_}));
}
SessionType SessionType::par(SessionType a, SessionType b) {
  return SessionType(std::make_shared<const Node>(Node{TypeTag::Par, a.node_, b.node_}));
}
SessionType SessionType::plus(SessionType a, SessionType b) {
  return SessionType(std::make_shared<const Node>(Node{TypeTag::Plus, a.node_, b.node_}));
}
SessionType SessionType::with(SessionType a, SessionType b) {
  return SessionType(std::make_shared<const Node>(Node{TypeTag::With, a.node_, b.node_}));
}

bool operator==(const SessionType& a, const SessionType& b) {
  if (a.node_ == b.node_) return true;
  if (a.tag() != b.tag()) return false;
  if (!a.is_binary()) return true;
  return a.left() == b.left() && a.right() == b.right();
}

bool operator<(const SessionType& a, const SessionType& b) {
  if (a.tag() != b.tag()) return a.tag() < b.tag();
  if (!a.is_binary()) return false;
  if (a.left() < b.left()) return true;
  if (b.left() < a.left()) return false;
  return a.right() < b.right();
}

SessionType dual(const SessionType& a) {
  switch (a.tag()) {
    case TypeTag::One: return unit_bot();
    case TypeTag::Bot: return unit_one();
    case TypeTag::Tensor: return SessionType::par(dual(a.left()), dual(a.right()));
    case TypeTag::Par: return SessionType::tensor(dual(a.left()), dual(a.right()));
    case TypeTag::Plus: return SessionType::with(dual(a.left()), dual(a.right()));
    case TypeTag::With: return SessionType::plus(dual(a.left()), dual(a.right()));
  }
  return unit_one();  // unreachable
}

int type_depth(const SessionType& a) {
  if (!a.is_binary()) return 1;
  return 1 + std::max(type_depth(a.left()), type_depth(a.right()));
}

std::size_t for_each_type_to_depth(int max_depth,
                                   const std::function<void(const SessionType&)>& visit) {
  std::vector<std::vector<SessionType>> by_depth;  // by_depth[d-1]: exactly depth d
  std::size_t count = 0;
  for (int d = 1; d <= max_depth; d++) {
    const bool keep = d < max_depth;  // the last level is streamed, not stored
    std::vector<SessionType> level;
    auto emit1 = [&](SessionType t) {
      visit(t);
      count++;
      if (keep) level.push_back(std::move(t));
    };
    if (d == 1) {
      emit1(SessionType::one());
      emit1(SessionType::bot());
    } else {
      // One side has depth exactly d-1, the other anything smaller or equal.
      auto emit = [&](const SessionType& l, const SessionType& r) {
        emit1(SessionType::tensor(l, r));
        emit1(SessionType::par(l, r));
        emit1(SessionType::plus(l, r));
        emit1(SessionType::with(l, r));
      };
      for (const auto& l : by_depth[d - 2]) {
        for (int rd = 1; rd <= d - 1; rd++)
          for (const auto& r : by_depth[rd - 1]) emit(l, r);
      }
      for (int ld = 1; ld < d - 1; ld++)
        for (const auto& l : by_depth[ld - 1])
          for (const auto& r : by_depth[d - 2]) emit(l, r);
    }
    by_depth.push_back(std::move(level));
  }
  return count;
}

}  // namespace scp
