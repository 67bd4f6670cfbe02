#include "trnrp/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trnrp {

NodeSet prune_actions(const BeliefState& state, const Instance& instance) {
  const NodeSet pending = state.pending();
  const PowerTree& tree = instance.tree();
  NodeSet kept = pending;
  for (NodeId j : state.uncertain) {
    const double dj = instance.distance(state.location, j);
    for (NodeId b : tree.strict_ancestors(j) & pending) {
      if (instance.distance(state.location, b) <= dj) {
        kept.erase(j);
        break;
      }
    }
  }
  return kept;
}

GreedyChoice greedy_choice(const BeliefState& state, const ValueTable& table,
                           const Instance& instance, bool prune) {
  const NodeSet candidates = candidate_actions(state, instance, prune);
  if (candidates.empty()) throw std::invalid_argument("no action available in a terminal state");
  GreedyChoice best{kNoNode, std::numeric_limits<double>::infinity()};
  for (NodeId a : candidates) {
    const double q =
        cost(state, a, instance) + table.value_or_zero(aggregate_key(post_decision(state, a), table.mode()));
    if (q < best.value) best = {a, q};
  }
  return best;
}

namespace {

NodeId uniform_candidate(NodeSet candidates, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, candidates.size() - 1);
  int k = pick(rng);
  for (NodeId a : candidates) {
    if (k-- == 0) return a;
  }
  return candidates.first();
}

}  // namespace

NodeId select_action(const BeliefState& state, const ValueTable& table, const Instance& instance,
                     double epsilon, Rng& rng, bool prune) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < epsilon) {
    const NodeSet candidates = candidate_actions(state, instance, prune);
    if (candidates.empty()) throw std::invalid_argument("no action available in a terminal state");
    return uniform_candidate(candidates, rng);
  }
  return greedy_choice(state, table, instance, prune).action;
}

StopDecision stopping_rule(std::uint64_t iterations, std::uint64_t new_keys_in_batch,
                           std::span<const double> batch_deltas, const TrainConfig& config) {
  if (iterations < config.warmup_iterations) return StopDecision::kContinue;
  if (new_keys_in_batch > 0) return StopDecision::kContinue;
  if (batch_deltas.size() < 3) return StopDecision::kContinue;
  const auto last = batch_deltas.last(3);
  const double worst = *std::max_element(last.begin(), last.end());
  return worst < config.stop_threshold ? StopDecision::kStop : StopDecision::kContinue;
}

StopDecision stopping_check(ValueTable& table, const TrainConfig& config) {
  TableMetadata& m = table.metadata();
  const auto min_visits = static_cast<std::uint64_t>(
      std::ceil(config.frequent_fraction * static_cast<double>(m.iterations)));
  m.batch_deltas.push_back(table.max_batch_change(std::max<std::uint64_t>(min_visits, 1)));
  return stopping_rule(m.iterations, table.new_keys_in_batch(), m.batch_deltas, config);
}

AggregationKey initial_post_key(const Instance& instance, AggregationMode mode) {
  const BeliefState s0 = initial_state(instance);
  PostDecisionState post{kDepot, s0.served, s0.cleared, s0.faulty, s0.uncertain, false};
  return aggregate_key(post, mode);
}

ValueTable train(const Instance& instance, const TrainConfig& config, AggregationMode mode,
                 bool prune, const ProgressCallback& progress) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  ValueTable table(mode);
  TableMetadata& meta = table.metadata();
  meta.node_count = instance.node_count();
  meta.prune = prune;
  meta.config = config;

  Rng rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const AggregationKey start_key = initial_post_key(instance, mode);

  table.begin_batch();
  while (meta.iterations < config.max_iterations) {
    BeliefState state = initial_state(instance);
    AggregationKey previous = start_key;
    while (!is_terminal(state)) {
      const GreedyChoice greedy = greedy_choice(state, table, instance, prune);
      const TableEntry& updated = table.update(previous, greedy.value);
      const double epsilon =
          std::min(1.0, config.exploration_constant / static_cast<double>(updated.visits));
      NodeId a = greedy.action;
      if (unit(rng) < epsilon) a = uniform_candidate(candidate_actions(state, instance, prune), rng);
      const PostDecisionState post = post_decision(state, a);
      previous = aggregate_key(post, mode);
      state = reveal(post, instance, rng);
    }
    table.update(previous, 0.0);
    ++meta.iterations;

    if (meta.iterations % config.batch_size == 0) {
      const StopDecision decision = stopping_check(table, config);
      if (progress) {
        progress({meta.iterations, table.size(), table.new_keys_in_batch(), meta.batch_deltas.back()});
      }
      if (decision == StopDecision::kStop) {
        meta.converged = true;
        break;
      }
      table.begin_batch();
    }
  }
  meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return table;
}

}  // namespace trnrp
