#include "trnrp/kopt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace trnrp {
namespace {

constexpr double kTravelTolerance = 1e-9;

void require_permutation(std::span<const NodeId> order, const Instance& instance) {
  const int n = instance.node_count();
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("route visits " + std::to_string(order.size()) + " nodes, expected " +
                                std::to_string(n));
  }
  NodeSet seen;
  for (NodeId i : order) {
    if (i < 1 || i > n || seen.contains(i)) {
      throw std::invalid_argument("route is not a permutation of the network nodes");
    }
    seen.insert(i);
  }
}

enum class Compare { kDominates, kNotDominating };

Compare compare_legs(const std::vector<OfflineLeg>& candidate, const std::vector<OfflineLeg>& base,
                     std::size_t& first_strict) {
  bool strict = false;
  for (std::size_t q = 0; q < base.size(); ++q) {
    if (candidate[q].travel > base[q].travel + kTravelTolerance) return Compare::kNotDominating;
    if (candidate[q].dark > base[q].dark) return Compare::kNotDominating;
    const bool better = candidate[q].travel < base[q].travel - kTravelTolerance ||
                        candidate[q].dark < base[q].dark;
    if (better && !strict) {
      strict = true;
      first_strict = q;
    }
  }
  return strict ? Compare::kDominates : Compare::kNotDominating;
}

struct Segment {
  std::size_t begin;
  std::size_t end;
};

}  // namespace

int offline_dark(NodeSet repaired, const Instance& instance) {
  const PowerTree& tree = instance.tree();
  int dark = 0;
  for (NodeId i : tree.nodes()) {
    if (!tree.path_from_source(i).subset_of(repaired)) ++dark;
  }
  return dark;
}

std::vector<OfflineLeg> offline_legs(std::span<const NodeId> order, const Instance& instance) {
  require_permutation(order, instance);
  std::vector<OfflineLeg> legs;
  legs.reserve(order.size());
  NodeSet repaired;
  NodeId at = kDepot;
  for (NodeId next : order) {
    legs.push_back({instance.distance(at, next), offline_dark(repaired, instance)});
    repaired.insert(next);
    at = next;
  }
  return legs;
}

double offline_cost(std::span<const NodeId> order, const Instance& instance) {
  double total = 0.0;
  for (const OfflineLeg& leg : offline_legs(order, instance)) {
    total += (leg.travel + instance.repair_time()) * leg.dark;
  }
  return total;
}

RolloutTrace offline_trace(std::span<const NodeId> order, const Instance& instance) {
  require_permutation(order, instance);
  Realization all_faulty{instance.tree().nodes()};
  std::size_t step = 0;
  return rollout(instance, all_faulty, [&](const BeliefState& state) {
    const NodeId next = order[step++];
    if (!state.pending().contains(next)) {
      throw std::logic_error("node " + std::to_string(next) + " is not pending");
    }
    return next;
  });
}

KoptResult double_kopt_check(std::span<const NodeId> order, const Instance& instance, int k) {
  require_permutation(order, instance);
  const std::size_t n = order.size();
  if (k < 2) throw std::invalid_argument("k-opt check needs k >= 2");
  // Route length counts the depot, so a single-leg route admits k = 2 but
  // has no legs to exchange.
  if (static_cast<std::size_t>(k) > n + 1) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the route length " +
                                std::to_string(n + 1));
  }
  KoptResult result;
  if (static_cast<std::size_t>(k) > n) return result;
  const std::vector<OfflineLeg> base = offline_legs(order, instance);

  std::vector<NodeId> candidate(n);
  std::vector<Segment> segments(k);
  std::vector<int> perm(k);

  // Cut positions c_1 < ... < c_k in [0, n): leg c_j is dropped and the
  // segment order[c_j .. c_{j+1}) becomes movable. The prefix stays put.
  std::vector<std::size_t> cuts(k);
  std::iota(cuts.begin(), cuts.end(), std::size_t{0});
  while (true) {
    for (int j = 0; j < k; ++j) {
      segments[j] = {cuts[j], j + 1 < k ? cuts[j + 1] : n};
    }
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (unsigned mask = 0; mask < (1U << k); ++mask) {
        bool identity = mask == 0;
        for (int j = 0; identity && j < k; ++j) identity = perm[j] == j;
        if (identity) continue;

        std::copy(order.begin(), order.begin() + cuts[0], candidate.begin());
        std::size_t at = cuts[0];
        for (int j = 0; j < k; ++j) {
          const Segment seg = segments[perm[j]];
          if ((mask >> j) & 1U) {
            std::reverse_copy(order.begin() + seg.begin, order.begin() + seg.end, candidate.begin() + at);
          } else {
            std::copy(order.begin() + seg.begin, order.begin() + seg.end, candidate.begin() + at);
          }
          at += seg.end - seg.begin;
        }
        ++result.exchanges_scanned;

        std::size_t leg = 0;
        if (compare_legs(offline_legs(candidate, instance), base, leg) == Compare::kDominates) {
          result.passed = false;
          result.witness = KoptWitness{candidate, leg};
          return result;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    int j = k - 1;
    while (j >= 0 && cuts[j] == n - static_cast<std::size_t>(k - j)) --j;
    if (j < 0) break;
    ++cuts[j];
    for (int t = j + 1; t < k; ++t) cuts[t] = cuts[t - 1] + 1;
  }
  return result;
}

KoptResult double_kopt_check(const RolloutTrace& trace, const Instance& instance, int k) {
  const std::vector<NodeId> order = trace.visit_order();
  return double_kopt_check(order, instance, k);
}

}  // namespace trnrp
