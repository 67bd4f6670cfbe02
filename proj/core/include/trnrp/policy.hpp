#pragma once

#include <functional>
#include <memory>
#include <string>

#include "trnrp/exact.hpp"
#include "trnrp/instance.hpp"
#include "trnrp/mdp.hpp"
#include "trnrp/value_table.hpp"

namespace trnrp {

/// A named decision rule over belief states. Must return a member of
/// actions(state) for every non-terminal feasible state.
struct Policy {
  std::string name;
  std::function<NodeId(const BeliefState&)> choose;
};

/// Most descendants in the power tree first, then nearer, then lower id.
NodeId ps_policy(const BeliefState& state, const Instance& instance);
/// Nearest candidate, lower id on ties.
NodeId nn_policy(const BeliefState& state, const Instance& instance);

// The factories below keep a reference to `instance`; it must outlive the policy.

Policy priority_sequence_policy(const Instance& instance);
Policy nearest_neighbor_policy(const Instance& instance);
/// Greedy against a learned table (shared, read-only).
Policy table_greedy_policy(std::string name, const Instance& instance,
                           std::shared_ptr<const ValueTable> table, bool prune);
/// Greedy against exact Q-values; the solver cache is shared between copies.
Policy oracle_greedy_policy(const Instance& instance);

}  // namespace trnrp
