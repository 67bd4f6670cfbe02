#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "trnrp/aggregation.hpp"
#include "trnrp/instance.hpp"
#include "trnrp/mdp.hpp"
#include "trnrp/value_table.hpp"

namespace trnrp {

/// Drops an uncertain candidate j when some strict predecessor b of j that is
/// still pending is no farther from the crew: d(L,b) <= d(L,j). Known-faulty
/// candidates are always kept, so the result is never empty for a
/// non-terminal state.
NodeSet prune_actions(const BeliefState& state, const Instance& instance);

/// Candidate set used by the trainer and by table-greedy rollouts.
inline NodeSet candidate_actions(const BeliefState& state, const Instance& instance, bool prune) {
  return prune ? prune_actions(state, instance) : actions(state);
}

struct GreedyChoice {
  NodeId action = kNoNode;
  /// min_a { c(S,a) + H(key(S,a)) } over the candidates.
  double value = 0.0;
};

/// Lowest node id wins ties. Throws std::invalid_argument on a terminal state.
GreedyChoice greedy_choice(const BeliefState& state, const ValueTable& table,
                           const Instance& instance, bool prune);

/// With probability epsilon a uniform candidate, otherwise the greedy one.
NodeId select_action(const BeliefState& state, const ValueTable& table, const Instance& instance,
                     double epsilon, Rng& rng, bool prune);

enum class StopDecision { kContinue, kStop };

/// Batch stopping rule. Continues during warm-up or when the last batch added
/// a key; otherwise stops once the last three recorded changes are all below
/// the threshold.
StopDecision stopping_rule(std::uint64_t iterations, std::uint64_t new_keys_in_batch,
                           std::span<const double> batch_deltas, const TrainConfig& config);

/// Records this batch's change over frequent keys in the table metadata, then
/// applies stopping_rule. Call at batch boundaries only.
StopDecision stopping_check(ValueTable& table, const TrainConfig& config);

struct BatchProgress {
  std::uint64_t iterations = 0;
  std::size_t keys = 0;
  std::uint64_t new_keys = 0;
  double delta = 0.0;
};
using ProgressCallback = std::function<void(const BatchProgress&)>;

/// Key of the post-decision state that precedes the first decision.
AggregationKey initial_post_key(const Instance& instance, AggregationMode mode);

/// Simulation-based value approximation over post-decision states. Each
/// episode draws faults lazily as they are revealed; at every decision the
/// sampled Bellman value updates the previous post-decision key, and the
/// terminal state contributes 0.
ValueTable train(const Instance& instance, const TrainConfig& config, AggregationMode mode,
                 bool prune, const ProgressCallback& progress = {});

}  // namespace trnrp
