#include "trnrp/power_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace trnrp {

PowerTree::PowerTree(std::vector<NodeId> parent) : parent_(std::move(parent)) {
  const int n = node_count();
  if (n < 1) throw std::invalid_argument("power tree needs at least one node");
  if (n > kMaxNodes) {
    throw std::invalid_argument("power tree exceeds " + std::to_string(kMaxNodes) + " nodes");
  }
  if (parent_[kDepot] != kNoNode || parent_[kSource] != kNoNode) {
    throw std::invalid_argument("depot and source must have no parent");
  }

  children_.assign(n + 1, {});
  for (NodeId i = 2; i <= n; ++i) {
    const NodeId p = parent_[i];
    if (p < 1 || p > n || p == i) {
      throw std::invalid_argument("node " + std::to_string(i) + " has invalid parent " +
                                  std::to_string(p));
    }
    children_[p].push_back(i);
  }

  // Breadth-first from the source; any node left unreached sits on a cycle.
  path_.assign(n + 1, NodeSet{});
  node_depth_.assign(n + 1, -1);
  std::vector<NodeId> order{kSource};
  path_[kSource] = NodeSet::single(kSource);
  node_depth_[kSource] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId u = order[head];
    for (NodeId c : children_[u]) {
      path_[c] = path_[u] | NodeSet::single(c);
      node_depth_[c] = node_depth_[u] + 1;
      order.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("parent array contains a cycle or disconnected node");
  }

  descendants_.assign(n + 1, NodeSet{});
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId u = *it;
    for (NodeId c : children_[u]) descendants_[u] |= descendants_[c] | NodeSet::single(c);
  }
}

int PowerTree::depth() const {
  if (node_depth_.size() <= 1) return 0;
  return *std::max_element(node_depth_.begin() + 1, node_depth_.end());
}

}  // namespace trnrp
