#include "trnrp/policy.hpp"

#include <stdexcept>
#include <utility>

#include "trnrp/learner.hpp"

namespace trnrp {
namespace {

void require_nonterminal(const BeliefState& state) {
  if (is_terminal(state)) throw std::invalid_argument("no action available in a terminal state");
}

}  // namespace

NodeId ps_policy(const BeliefState& state, const Instance& instance) {
  require_nonterminal(state);
  const PowerTree& tree = instance.tree();
  NodeId best = kNoNode;
  int best_count = -1;
  double best_distance = 0.0;
  for (NodeId a : actions(state)) {
    const int count = tree.descendants(a).size();
    const double d = instance.distance(state.location, a);
    if (count > best_count || (count == best_count && d < best_distance)) {
      best = a;
      best_count = count;
      best_distance = d;
    }
  }
  return best;
}

NodeId nn_policy(const BeliefState& state, const Instance& instance) {
  require_nonterminal(state);
  NodeId best = kNoNode;
  double best_distance = 0.0;
  for (NodeId a : actions(state)) {
    const double d = instance.distance(state.location, a);
    if (best == kNoNode || d < best_distance) {
      best = a;
      best_distance = d;
    }
  }
  return best;
}

Policy priority_sequence_policy(const Instance& instance) {
  return {"ps", [&instance](const BeliefState& s) { return ps_policy(s, instance); }};
}

Policy nearest_neighbor_policy(const Instance& instance) {
  return {"nn", [&instance](const BeliefState& s) { return nn_policy(s, instance); }};
}

Policy table_greedy_policy(std::string name, const Instance& instance,
                           std::shared_ptr<const ValueTable> table, bool prune) {
  if (!table) throw std::invalid_argument("table-greedy policy needs a table");
  return {std::move(name), [&instance, table = std::move(table), prune](const BeliefState& s) {
            return greedy_choice(s, *table, instance, prune).action;
          }};
}

Policy oracle_greedy_policy(const Instance& instance) {
  auto solver = std::make_shared<ExactSolver>(instance);
  return {"oracle", [solver](const BeliefState& s) { return solver->best_action(s); }};
}

}  // namespace trnrp
