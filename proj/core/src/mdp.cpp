#include "trnrp/mdp.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace trnrp {
namespace {

void require_action(const BeliefState& state, NodeId a) {
  if (a < 1 || a > kMaxNodes || !state.pending().contains(a)) {
    throw std::invalid_argument("node " + std::to_string(a) + " is not an available action");
  }
}

void expand_outcomes(BeliefState state, std::vector<NodeId> frontier, std::size_t next,
                     double probability, const Instance& instance,
                     std::vector<TransitionOutcome>& out) {
  const double p = instance.fault_prob();
  const PowerTree& tree = instance.tree();
  while (next < frontier.size()) {
    const NodeId c = frontier[next++];
    if (state.cleared.contains(c)) {
      state.cleared.erase(c);
      state.served.insert(c);
      for (NodeId g : tree.children(c)) frontier.push_back(g);
    } else if (state.uncertain.contains(c)) {
      BeliefState broken = state;
      broken.uncertain.erase(c);
      broken.faulty.insert(c);
      expand_outcomes(broken, frontier, next, probability * p, instance, out);

      state.uncertain.erase(c);
      state.served.insert(c);
      probability *= 1.0 - p;
      for (NodeId g : tree.children(c)) frontier.push_back(g);
    }
  }
  out.push_back({state, probability});
}

void append_set(std::ostringstream& os, NodeSet set) {
  os << '{';
  bool first = true;
  for (NodeId i : set) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
}

NodeSet parse_set(std::string_view text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw std::invalid_argument("expected a braced node list, got '" + std::string(text) + "'");
  }
  NodeSet set;
  std::string body(text.substr(1, text.size() - 2));
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int id = std::stoi(item, &used);
    if (used != item.size() || id < 1 || id > kMaxNodes) {
      throw std::invalid_argument("bad node id '" + item + "'");
    }
    set.insert(id);
  }
  return set;
}

}  // namespace

BeliefState initial_state(const Instance& instance) {
  BeliefState s;
  s.location = kDepot;
  s.faulty = NodeSet::single(kSource);
  s.uncertain = NodeSet::range(2, instance.node_count());
  return s;
}

std::optional<std::string> feasibility_violation(const BeliefState& state, const Instance& instance) {
  const PowerTree& tree = instance.tree();
  const NodeSet all = tree.nodes();
  const NodeSet sets[] = {state.served, state.cleared, state.faulty, state.uncertain};
  NodeSet seen;
  for (NodeSet s : sets) {
    if (seen.intersects(s)) return "node sets overlap";
    seen |= s;
  }
  if (seen != all) return "node sets do not partition the network";

  for (NodeId i : state.served) {
    if (!tree.path_from_source(i).subset_of(state.served)) {
      return "served node " + std::to_string(i) + " has an unserved predecessor";
    }
  }
  for (NodeId i : state.cleared) {
    if (tree.strict_ancestors(i).subset_of(state.served)) {
      return "cleared node " + std::to_string(i) + " has every predecessor served";
    }
  }
  for (NodeId i : state.faulty) {
    if (!tree.strict_ancestors(i).subset_of(state.served)) {
      return "known-faulty node " + std::to_string(i) + " has an unserved predecessor";
    }
  }
  for (NodeId i : state.uncertain) {
    if (tree.strict_ancestors(i).subset_of(state.served)) {
      return "uncertain node " + std::to_string(i) + " has every predecessor served";
    }
  }
  if (state.location != kDepot && !(state.served | state.cleared).contains(state.location)) {
    return "crew location " + std::to_string(state.location) + " is not a visited node";
  }
  return std::nullopt;
}

NodeSet checked_actions(const BeliefState& state, const Instance& instance) {
  if (auto why = feasibility_violation(state, instance)) {
    throw std::invalid_argument("infeasible state: " + *why);
  }
  return actions(state);
}

double cost(const BeliefState& state, NodeId a, const Instance& instance) {
  require_action(state, a);
  const double travel = instance.distance(state.location, a);
  const double repair =
      state.faulty.contains(a) ? instance.repair_time() : instance.fault_prob() * instance.repair_time();
  return (travel + repair) * count_dark(state);
}

PostDecisionState post_decision(const BeliefState& state, NodeId a) {
  require_action(state, a);
  PostDecisionState post{a, state.served, state.cleared, state.faulty, state.uncertain, false};
  if (state.faulty.contains(a)) {
    post.faulty.erase(a);
    post.served.insert(a);
    post.repaired = true;
  } else {
    post.uncertain.erase(a);
    post.cleared.insert(a);
  }
  return post;
}

BeliefState as_belief(const PostDecisionState& post) {
  return {post.action, post.served, post.cleared, post.faulty, post.uncertain};
}

BeliefState reveal(const PostDecisionState& post, const Instance& instance,
                   const Realization& realization) {
  return reveal(post, instance, [&](NodeId i) { return realization.is_faulty(i); });
}

BeliefState reveal(const PostDecisionState& post, const Instance& instance, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p = instance.fault_prob();
  return reveal(post, instance, [&](NodeId) { return unit(rng) < p; });
}

std::vector<TransitionOutcome> enumerate_transitions(const BeliefState& state, NodeId a,
                                                     const Instance& instance) {
  const PostDecisionState post = post_decision(state, a);
  std::vector<TransitionOutcome> out;
  if (!post.repaired) {
    out.push_back({as_belief(post), 1.0});
    return out;
  }
  const auto kids = instance.tree().children(a);
  expand_outcomes(as_belief(post), std::vector<NodeId>(kids.begin(), kids.end()), 0, 1.0,
                  instance, out);
  return out;
}

Realization sample_realization(const Instance& instance, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Realization r;
  r.faults.insert(kSource);
  for (NodeId i = 2; i <= instance.node_count(); ++i) {
    if (unit(rng) < instance.fault_prob()) r.faults.insert(i);
  }
  return r;
}

std::string to_string(const BeliefState& state) {
  std::ostringstream os;
  os << "L=" << state.location << " U+=";
  append_set(os, state.served);
  os << " U0=";
  append_set(os, state.cleared);
  os << " U1=";
  append_set(os, state.faulty);
  os << " Up=";
  append_set(os, state.uncertain);
  return os.str();
}

BeliefState parse_belief_state(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  BeliefState state;
  bool have[5] = {false, false, false, false, false};
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "L") {
      std::size_t used = 0;
      state.location = std::stoi(value, &used);
      if (used != value.size() || state.location < 0 || state.location > kMaxNodes) {
        throw std::invalid_argument("bad location '" + value + "'");
      }
      have[0] = true;
    } else if (key == "U+") {
      state.served = parse_set(value);
      have[1] = true;
    } else if (key == "U0") {
      state.cleared = parse_set(value);
      have[2] = true;
    } else if (key == "U1") {
      state.faulty = parse_set(value);
      have[3] = true;
    } else if (key == "Up") {
      state.uncertain = parse_set(value);
      have[4] = true;
    } else {
      throw std::invalid_argument("unknown state field '" + key + "'");
    }
  }
  for (bool h : have) {
    if (!h) throw std::invalid_argument("state text must give L, U+, U0, U1 and Up");
  }
  return state;
}

}  // namespace trnrp
