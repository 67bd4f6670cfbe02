#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "trnrp/mdp.hpp"

namespace trnrp {

/// One crew movement: travel to `to`, then repair if a fault is present.
struct Leg {
  NodeId from = kDepot;
  NodeId to = kDepot;
  double travel = 0.0;
  double repair = 0.0;
  /// Nodes without service when the leg starts.
  int dark = 0;

  double disruption() const { return (travel + repair) * dark; }
};

struct RolloutTrace {
  std::vector<Leg> legs;
  double total = 0.0;

  std::vector<NodeId> visit_order() const {
    std::vector<NodeId> order;
    order.reserve(legs.size());
    for (const Leg& leg : legs) order.push_back(leg.to);
    return order;
  }
};

/// Runs `choose(state)` against a known realization until every node has
/// service. Realized repair time is s at known-faulty nodes and at uncertain
/// nodes that turn out faulty, 0 otherwise.
template <class Chooser>
RolloutTrace rollout(const Instance& instance, const Realization& realization, Chooser&& choose) {
  RolloutTrace trace;
  BeliefState state = initial_state(instance);
  const int max_steps = 2 * instance.node_count();
  while (!is_terminal(state)) {
    if (static_cast<int>(trace.legs.size()) >= max_steps) {
      throw std::logic_error("rollout exceeded " + std::to_string(max_steps) + " actions");
    }
    const NodeId a = choose(state);
    Leg leg;
    leg.from = state.location;
    leg.to = a;
    leg.travel = instance.distance(state.location, a);
    const bool needs_repair = state.faulty.contains(a) || realization.is_faulty(a);
    leg.repair = needs_repair ? instance.repair_time() : 0.0;
    leg.dark = count_dark(state);
    trace.total += leg.disruption();
    trace.legs.push_back(leg);
    state = reveal(post_decision(state, a), instance, realization);
  }
  return trace;
}

}  // namespace trnrp
