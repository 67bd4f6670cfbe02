#pragma once

#include <span>
#include <vector>

#include "trnrp/node_set.hpp"

namespace trnrp {

/// Directed distribution tree over nodes 1..n rooted at the source (node 1).
///
/// Stored as a parent array of length n+1; slot 0 (the depot) and slot 1 (the
/// source) hold kNoNode. Construction validates the tree and precomputes the
/// ancestor/descendant sets used throughout the MDP.
class PowerTree {
 public:
  PowerTree() = default;

  /// Throws std::invalid_argument unless `parent` describes a tree rooted at 1.
  explicit PowerTree(std::vector<NodeId> parent);

  int node_count() const { return static_cast<int>(parent_.size()) - 1; }
  NodeId parent(NodeId i) const { return parent_[i]; }
  const std::vector<NodeId>& parents() const { return parent_; }
  std::span<const NodeId> children(NodeId i) const { return children_[i]; }

  /// P_{1i}: the source-to-i path, including i.
  NodeSet path_from_source(NodeId i) const { return path_[i]; }
  NodeSet strict_ancestors(NodeId i) const { return path_[i] - NodeSet::single(i); }
  /// All transitive successors of i, excluding i.
  NodeSet descendants(NodeId i) const { return descendants_[i]; }
  int node_depth(NodeId i) const { return node_depth_[i]; }
  NodeSet nodes() const { return NodeSet::range(1, node_count()); }

  /// Arcs on the longest source-to-leaf path.
  int depth() const;

  friend bool operator==(const PowerTree& a, const PowerTree& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeSet> path_;
  std::vector<NodeSet> descendants_;
  std::vector<int> node_depth_;
};

}  // namespace trnrp
