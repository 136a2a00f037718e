#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace scp {

enum class TypeTag : std::uint8_t { One, Bot, Tensor, Par, Plus, With };

// A session type: a linear-logic proposition read as the protocol of one
// channel. Immutable tree; cheap to copy (shared node).
class SessionType {
 public:
  static SessionType one();
  static SessionType bot();
  static SessionType tensor(SessionType a, SessionType b);
  static SessionType par(SessionType a, SessionType b);
  static SessionType plus(SessionType a, SessionType b);
  static SessionType with(SessionType a, SessionType b);

  TypeTag tag() const { return node_->tag; }
  bool is_binary() const { return tag() >= TypeTag::Tensor; }
  SessionType left() const { return SessionType(node_->left); }    // binary tags only
  SessionType right() const { return SessionType(node_->right); }  // binary tags only

  friend bool operator==(const SessionType& a, const SessionType& b);
  friend bool operator!=(const SessionType& a, const SessionType& b) { return !(a == b); }
  // Total order, usable as a map key.
  friend bool operator<(const SessionType& a, const SessionType& b);

 private:
  struct Node {
    TypeTag tag;
    std::shared_ptr<const Node> left, right;  // valid only for binary tags
  };
  SessionType() = default;
  explicit SessionType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// The involutive dual: swaps 1/bot and the send/receive role of each
// connective, recursively.
SessionType dual(const SessionType& a);

int type_depth(const SessionType& a);

// Visits every session type of depth <= max_depth, smallest first.
// Returns the number visited.
std::size_t for_each_type_to_depth(int max_depth,
                                   const std::function<void(const SessionType&)>& visit);

}  // namespace scp
