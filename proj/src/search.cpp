#include "biplan/search.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace biplan {

namespace {

std::size_t array_length_cap(const Problem& problem) {
  std::size_t init = 0;
  std::size_t goal = 0;
  if (const auto* arr = std::get_if<ArrayState>(&problem.initial_state)) init = arr->size();
  if (problem.goal.equals) goal = problem.goal.equals->size();
  return 2 * std::max(init, goal);
}

struct Node {
  State state;
  int parent = -1;      // index into the expansion log
  Action via;           // action taken from the parent (meaningless at the root)
  bool has_via = false;
};

}  // namespace

BfsResult bfs_plan(const Problem& problem, Direction direction, const SearchLimits& limits) {
  const bool forward = direction == Direction::forward;
  const State start = forward ? problem.initial_state : backward_start_state(problem);
  const std::size_t length_cap =
      problem.domain_kind == DomainKind::array ? array_length_cap(problem) : 0;

  auto is_target = [&](const State& s) {
    if (forward) return goal_satisfied(problem, s);
    return states_equal(s, problem.initial_state);
  };
  auto moves_at = [&](const State& s) {
    return forward ? legal_actions(problem, s) : inverse_legal_actions(problem, s);
  };
  auto step = [&](const State& s, const Action& a) {
    return forward ? apply_action(problem, s, a) : apply_inverse_action(problem, s, a);
  };

  std::vector<Node> nodes;
  std::unordered_map<std::string, int> seen;
  std::deque<int> queue;

  nodes.push_back(Node{start, -1, Action{}, false});
  seen.emplace(state_key(start), 0);
  queue.push_back(0);

  int expansions = 0;
  while (!queue.empty()) {
    const int index = queue.front();
    queue.pop_front();
    ++expansions;
    if (static_cast<std::size_t>(expansions) > limits.max_expansions)
      throw StateSpaceOverflow("bfs_plan: expansion cap exceeded");

    const State current = nodes[index].state;
    if (is_target(current)) {
      Plan plan;
      plan.direction = direction;
      plan.frame = problem.direction_frame;
      for (int at = index; nodes[at].has_via; at = nodes[at].parent) {
        plan.actions.push_back(nodes[at].via);
      }
      std::reverse(plan.actions.begin(), plan.actions.end());
      return BfsResult{std::move(plan), expansions};
    }

    for (const Action& action : moves_at(current)) {
      State next = step(current, action);
      if (length_cap > 0 && std::holds_alternative<ArrayState>(next) &&
          std::get<ArrayState>(next).size() > length_cap) {
        continue;
      }
      const std::string key = state_key(next);
      if (seen.count(key)) continue;
      seen.emplace(key, static_cast<int>(nodes.size()));
      nodes.push_back(Node{std::move(next), index, action, true});
      queue.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }
  return BfsResult{std::nullopt, expansions};
}

SearchCost search_cost(const Problem& problem, const SearchLimits& limits) {
  SearchCost cost;
  cost.forward_steps = bfs_plan(problem, Direction::forward, limits).expansions;
  cost.backward_steps = bfs_plan(problem, Direction::backward, limits).expansions;
  cost.difference = cost.forward_steps - cost.backward_steps;
  return cost;
}

std::optional<int> shortest_path_length(const Problem& problem) {
  const auto result = bfs_plan(problem, Direction::forward);
  if (!result.plan) return std::nullopt;
  return static_cast<int>(result.plan->actions.size());
}

}  // namespace biplan
