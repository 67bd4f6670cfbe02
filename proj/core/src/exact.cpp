#include "trnrp/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "trnrp/kopt.hpp"

namespace trnrp {
namespace {

void require_size(const Instance& instance, int size_limit) {
  if (instance.node_count() > size_limit) {
    throw std::invalid_argument("exact solver is limited to " + std::to_string(size_limit) +
                                " nodes; instance has " + std::to_string(instance.node_count()));
  }
}

}  // namespace

std::size_t ExactSolver::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.served * 0x9E3779B97F4A7C15ULL;
  h ^= (k.cleared + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
  h ^= (k.faulty * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2));
  h ^= static_cast<std::uint64_t>(k.location) + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

ExactSolver::ExactSolver(Instance instance, int size_limit) : instance_(std::move(instance)) {
  require_size(instance_, size_limit);
}

double ExactSolver::value(const BeliefState& state) {
  checked_actions(state, instance_);
  return solve(state);
}

double ExactSolver::q_value(const BeliefState& state, NodeId a) {
  checked_actions(state, instance_);
  return expand(state, a);
}

NodeId ExactSolver::best_action(const BeliefState& state) {
  const NodeSet candidates = checked_actions(state, instance_);
  if (candidates.empty()) throw std::invalid_argument("terminal state has no action");
  NodeId best = kNoNode;
  double best_q = std::numeric_limits<double>::infinity();
  for (NodeId a : candidates) {
    const double q = expand(state, a);
    if (q < best_q) {
      best_q = q;
      best = a;
    }
  }
  return best;
}

double ExactSolver::solve(const BeliefState& state) {
  if (is_terminal(state)) return 0.0;
  const Key key{state.served.bits(), state.cleared.bits(), state.faulty.bits(), state.location};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  double best = std::numeric_limits<double>::infinity();
  for (NodeId a : actions(state)) best = std::min(best, expand(state, a));
  cache_.emplace(key, best);
  return best;
}

double ExactSolver::expand(const BeliefState& state, NodeId a) {
  double q = cost(state, a, instance_);
  for (const TransitionOutcome& o : enumerate_transitions(state, a, instance_)) {
    q += o.probability * solve(o.next);
  }
  return q;
}

double exact_value(const Instance& instance, const BeliefState& state) {
  return ExactSolver(instance).value(state);
}

double exact_q(const Instance& instance, const BeliefState& state, NodeId a) {
  return ExactSolver(instance).q_value(state, a);
}

RolloutTrace optimal_policy_rollout(const Instance& instance, const Realization& realization) {
  ExactSolver solver(instance);
  return rollout(instance, realization,
                 [&](const BeliefState& s) { return solver.best_action(s); });
}

std::vector<WeightedRealization> enumerate_realizations(const Instance& instance, int size_limit) {
  require_size(instance, size_limit);
  const int n = instance.node_count();
  const double p = instance.fault_prob();
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  std::vector<WeightedRealization> out;
  out.reserve(patterns);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    WeightedRealization w;
    w.realization.faults = NodeSet(mask << 2) | NodeSet::single(kSource);
    const int faulty_others = std::popcount(mask);
    w.probability = std::pow(p, faulty_others) * std::pow(1.0 - p, (n - 1) - faulty_others);
    out.push_back(w);
  }
  return out;
}

OfflineRoute optimal_offline_route(const Instance& instance, int size_limit) {
  require_size(instance, size_limit);
  const int n = instance.node_count();
  const double s = instance.repair_time();
  const std::size_t subsets = std::size_t{1} << n;
  const double inf = std::numeric_limits<double>::infinity();

  // Subset bit j-1 stands for node j. cost_to_go[mask][last] covers the legs
  // still to come after `last` (0 = depot) has been repaired.
  std::vector<int> dark(subsets);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    dark[mask] = offline_dark(NodeSet(static_cast<std::uint64_t>(mask) << 1), instance);
  }
  std::vector<double> cost_to_go(subsets * (n + 1), inf);
  std::vector<NodeId> next_node(subsets * (n + 1), kNoNode);
  const std::size_t full = subsets - 1;
  for (NodeId last = 0; last <= n; ++last) cost_to_go[full * (n + 1) + last] = 0.0;

  for (std::size_t mask = full; mask-- > 0;) {
    for (NodeId last = 0; last <= n; ++last) {
      const bool last_ok = last == kDepot ? mask == 0 : ((mask >> (last - 1)) & 1U) != 0;
      if (!last_ok) continue;
      double best = inf;
      NodeId best_next = kNoNode;
      for (NodeId j = 1; j <= n; ++j) {
        if ((mask >> (j - 1)) & 1U) continue;
        const std::size_t after = mask | (std::size_t{1} << (j - 1));
        const double c = (instance.distance(last, j) + s) * dark[mask] +
                         cost_to_go[after * (n + 1) + j];
        if (c < best) {
          best = c;
          best_next = j;
        }
      }
      cost_to_go[mask * (n + 1) + last] = best;
      next_node[mask * (n + 1) + last] = best_next;
    }
  }

  OfflineRoute route;
  route.cost = cost_to_go[0 * (n + 1) + kDepot];
  std::size_t mask = 0;
  NodeId last = kDepot;
  while (mask != full) {
    const NodeId j = next_node[mask * (n + 1) + last];
    route.order.push_back(j);
    mask |= std::size_t{1} << (j - 1);
    last = j;
  }
  return route;
}

}  // namespace trnrp
