#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "trnrp/instance.hpp"
#include "trnrp/rollout.hpp"

namespace trnrp {

// Fully-informed offline model: every node is faulty and known to be, so a
// route is a permutation of 1..n starting from the depot and node i regains
// service once every node on its source path has been repaired.

/// Nodes still without service after `repaired` have been fixed.
int offline_dark(NodeSet repaired, const Instance& instance);

/// Leg q travels d_q and is weighted by Q_q, the dark count when it starts.
struct OfflineLeg {
  double travel = 0.0;
  int dark = 0;
};

/// Throws std::invalid_argument unless `order` is a permutation of 1..n.
std::vector<OfflineLeg> offline_legs(std::span<const NodeId> order, const Instance& instance);
/// sum_q (d_q + s) * Q_q.
double offline_cost(std::span<const NodeId> order, const Instance& instance);

/// Executes a fixed visit order against the all-faulty realization.
RolloutTrace offline_trace(std::span<const NodeId> order, const Instance& instance);

struct KoptWitness {
  std::vector<NodeId> improved_order;
  /// First leg where the exchange is strictly better.
  std::size_t leg = 0;
};

struct KoptResult {
  bool passed = true;
  std::optional<KoptWitness> witness;
  std::size_t exchanges_scanned = 0;
};

/// Scans every k-opt reconnection of the route (drop k legs, reorder and/or
/// reverse the k trailing segments). Fails with a witness when some exchange
/// is no worse on every leg's travel time and dark count and strictly better
/// on at least one. Throws std::invalid_argument when k < 2, when k exceeds the
/// route length (nodes plus the depot), or when the route does not visit every
/// node exactly once.
KoptResult double_kopt_check(std::span<const NodeId> order, const Instance& instance, int k);
KoptResult double_kopt_check(const RolloutTrace& trace, const Instance& instance, int k);

}  // namespace trnrp
