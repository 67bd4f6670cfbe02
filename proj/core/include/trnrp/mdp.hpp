#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "trnrp/instance.hpp"
#include "trnrp/node_set.hpp"

namespace trnrp {

/// Pre-decision belief state: crew location plus a partition of the network.
///
///  - served:    U+   nodes with service
///  - cleared:   U0-  dark, visited, known fault-free
///  - faulty:    U1-  dark, known faulty (every strict ancestor is served)
///  - uncertain: Up-  dark, unvisited, faulty with probability p
struct BeliefState {
  NodeId location = kDepot;
  NodeSet served;
  NodeSet cleared;
  NodeSet faulty;
  NodeSet uncertain;

  NodeSet dark() const { return cleared | faulty | uncertain; }
  NodeSet pending() const { return faulty | uncertain; }

  friend bool operator==(const BeliefState&, const BeliefState&) = default;
};

/// State after committing to `action` but before successors' status is revealed.
/// The action node has already moved (Up- -> U0-, or U1- -> U+) and is the location.
struct PostDecisionState {
  NodeId action = kDepot;
  NodeSet served;
  NodeSet cleared;
  NodeSet faulty;
  NodeSet uncertain;
  /// True when the action node was known faulty and has just been repaired.
  bool repaired = false;

  friend bool operator==(const PostDecisionState&, const PostDecisionState&) = default;
};

/// Ground-truth fault pattern. The source is always faulty.
struct Realization {
  NodeSet faults;
  bool is_faulty(NodeId i) const { return faults.contains(i); }
};

struct TransitionOutcome {
  BeliefState next;
  double probability = 0.0;
};

BeliefState initial_state(const Instance& instance);

/// Describes the first violated feasibility rule, or nullopt when feasible.
std::optional<std::string> feasibility_violation(const BeliefState& state, const Instance& instance);
inline bool is_feasible(const BeliefState& state, const Instance& instance) {
  return !feasibility_violation(state, instance).has_value();
}

inline bool is_terminal(const BeliefState& state) { return state.pending().empty(); }

/// Available actions U1- u Up-; empty once restoration is complete.
inline NodeSet actions(const BeliefState& state) { return state.pending(); }

/// Like actions(), but throws std::invalid_argument on an infeasible state.
NodeSet checked_actions(const BeliefState& state, const Instance& instance);

/// |N \ U+|, the number of nodes without service.
inline int count_dark(const BeliefState& state) { return state.dark().size(); }

/// Expected disruption added by travelling to `a` and repairing it if faulty.
/// Throws std::invalid_argument when `a` is not an available action.
double cost(const BeliefState& state, NodeId a, const Instance& instance);

/// Throws std::invalid_argument when `a` is not an available action.
PostDecisionState post_decision(const BeliefState& state, NodeId a);

/// Pre-decision view of a post-decision state with nothing revealed.
BeliefState as_belief(const PostDecisionState& post);

/// Reveals which successors regain service. When the action was a repair, the
/// cascade walks down from it: cleared children join U+ unconditionally,
/// uncertain children ask `is_faulty` and either join U+ (and recurse) or
/// become known-faulty. A visit to an uncertain node reveals nothing.
template <class FaultOracle>
  requires std::is_invocable_r_v<bool, FaultOracle&, NodeId>
BeliefState reveal(const PostDecisionState& post, const Instance& instance, FaultOracle&& is_faulty) {
  BeliefState next{post.action, post.served, post.cleared, post.faulty, post.uncertain};
  if (!post.repaired) return next;

  const PowerTree& tree = instance.tree();
  NodeId stack[kMaxNodes + 1];
  int top = 0;
  stack[top++] = post.action;
  while (top > 0) {
    const NodeId u = stack[--top];
    for (NodeId c : tree.children(u)) {
      if (next.cleared.contains(c)) {
        next.cleared.erase(c);
        next.served.insert(c);
        stack[top++] = c;
      } else if (next.uncertain.contains(c)) {
        next.uncertain.erase(c);
        if (is_faulty(c)) {
          next.faulty.insert(c);
        } else {
          next.served.insert(c);
          stack[top++] = c;
        }
      }
    }
  }
  return next;
}

BeliefState reveal(const PostDecisionState& post, const Instance& instance,
                   const Realization& realization);

/// Draws each resolved node's fault status lazily as Bernoulli(p).
BeliefState reveal(const PostDecisionState& post, const Instance& instance, Rng& rng);

/// Every successor state of (state, a) with its probability. A visit to an
/// uncertain node yields one outcome with probability 1.
std::vector<TransitionOutcome> enumerate_transitions(const BeliefState& state, NodeId a,
                                                     const Instance& instance);

/// Source faulty; every other node faulty iff its uniform draw falls below p.
/// Draws one uniform per node 2..n, so for a fixed seed the fault sets are
/// nested in p.
Realization sample_realization(const Instance& instance, Rng& rng);

/// Canonical text: "L=0 U+={} U0={} U1={1} Up={2,3}".
std::string to_string(const BeliefState& state);
/// Inverse of to_string; throws std::invalid_argument on malformed text.
BeliefState parse_belief_state(std::string_view text);

}  // namespace trnrp
