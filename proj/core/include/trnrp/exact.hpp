#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "trnrp/instance.hpp"
#include "trnrp/mdp.hpp"
#include "trnrp/rollout.hpp"

namespace trnrp {

/// Memoised expectimax over belief states. H(terminal) = 0 and
/// H(S) = min_a { c(S,a) + sum_{S'} P(S'|S,a) H(S') }.
///
/// Every action removes a node from U1- u Up- for good, so the recursion is
/// acyclic and needs no epoch index. One solver owns one cache; use separate
/// solvers from separate threads.
class ExactSolver {
 public:
  static constexpr int kDefaultSizeLimit = 12;

  /// Throws std::invalid_argument when the instance exceeds `size_limit` nodes.
  explicit ExactSolver(Instance instance, int size_limit = kDefaultSizeLimit);

  const Instance& instance() const { return instance_; }

  /// Throws std::invalid_argument for an infeasible state.
  double value(const BeliefState& state);
  /// Throws std::invalid_argument if `a` is not an available action.
  double q_value(const BeliefState& state, NodeId a);
  /// argmin_a q_value, lowest node id on ties. Requires a non-terminal state.
  NodeId best_action(const BeliefState& state);

  std::size_t cache_size() const { return cache_.size(); }

 private:
  struct Key {
    std::uint64_t served;
    std::uint64_t cleared;
    std::uint64_t faulty;
    NodeId location;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  double solve(const BeliefState& state);
  double expand(const BeliefState& state, NodeId a);

  Instance instance_;
  std::unordered_map<Key, double, KeyHash> cache_;
};

double exact_value(const Instance& instance, const BeliefState& state);
double exact_q(const Instance& instance, const BeliefState& state, NodeId a);

/// Follows argmin exact_q against a known realization.
RolloutTrace optimal_policy_rollout(const Instance& instance, const Realization& realization);

/// Every fault pattern (source always faulty) with its probability.
struct WeightedRealization {
  Realization realization;
  double probability = 0.0;
};
/// 2^(n-1) patterns; throws std::invalid_argument above `size_limit` nodes.
std::vector<WeightedRealization> enumerate_realizations(const Instance& instance,
                                                        int size_limit = ExactSolver::kDefaultSizeLimit);

/// Optimal visit order for the fully-informed case where every node is faulty
/// (dynamic program over visited subsets). Ties resolved toward lower node ids.
struct OfflineRoute {
  std::vector<NodeId> order;
  double cost = 0.0;
};
OfflineRoute optimal_offline_route(const Instance& instance,
                                   int size_limit = ExactSolver::kDefaultSizeLimit);

}  // namespace trnrp
