#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

namespace trnrp {

/// Node index. 0 is the crew depot; 1..n are power-network nodes, 1 is the source.
using NodeId = int;

inline constexpr NodeId kDepot = 0;
inline constexpr NodeId kSource = 1;
inline constexpr NodeId kNoNode = -1;

/// Largest supported network (bit 0 is reserved for the depot).
inline constexpr int kMaxNodes = 63;

/// Fixed-width set of node ids backed by a single 64-bit word.
class NodeSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;
    using pointer = const NodeId*;
    using reference = NodeId;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

    constexpr NodeId operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

  /// Inclusive id range [first, last]; empty when last < first.
  static constexpr NodeSet range(NodeId first, NodeId last) {
    NodeSet s;
    for (NodeId i = first; i <= last; ++i) s.insert(i);
    return s;
  }
  static constexpr NodeSet single(NodeId i) { return NodeSet(bit(i)); }

  constexpr bool contains(NodeId i) const { return (bits_ & bit(i)) != 0; }
  constexpr void insert(NodeId i) { bits_ |= bit(i); }
  constexpr void erase(NodeId i) { bits_ &= ~bit(i); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  /// Lowest member, or kNoNode when empty.
  constexpr NodeId first() const { return empty() ? kNoNode : std::countr_zero(bits_); }

  constexpr bool intersects(NodeSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr bool subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<NodeId> to_vector() const { return {begin(), end()}; }

  constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
  constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
  constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
  constexpr NodeSet& operator|=(NodeSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator&=(NodeSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator-=(NodeSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  friend constexpr bool operator==(NodeSet, NodeSet) = default;

 private:
  static constexpr std::uint64_t bit(NodeId i) { return std::uint64_t{1} << i; }

  std::uint64_t bits_ = 0;
};

}  // namespace trnrp
