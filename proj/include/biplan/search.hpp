#pragma once

#include <optional>
#include <utility>

#include "biplan/core.hpp"

namespace biplan {

// Forward/backward BFS expansion counts for one problem. Counts are numbers
// of dequeued states, including the start and the target.
struct SearchCost {
  int forward_steps = 0;
  int backward_steps = 0;
  int difference = 0;  // forward_steps - backward_steps
};

struct SearchLimits {
  // States longer than 2 * max(|s0|, |goal|) are never generated in array
  // search; repeat beyond that cannot come back within the alphabet.
  std::size_t max_expansions = 1000000;
};

struct BfsResult {
  std::optional<Plan> plan;
  int expansions = 0;  // dequeues up to and including the target, or the full
                       // exploration count when unreachable
};

// Shortest plan from the direction's start to its target. Backward searches
// start at the goal and walk inverted actions. Deterministic: FIFO queue,
// neighbors expanded in canonical order. Throws StateSpaceOverflow when the
// cap is exceeded.
BfsResult bfs_plan(const Problem& problem, Direction direction, const SearchLimits& limits = {});

SearchCost search_cost(const Problem& problem, const SearchLimits& limits = {});

// Edge count of a shortest path for a graph problem, empty when unreachable.
std::optional<int> shortest_path_length(const Problem& problem);

// BFS-backed oracle for validate_plan.
class BfsOracle : public OptimalityOracle {
 public:
  std::optional<int> shortest_path_length(const Problem& problem) const override {
    return biplan::shortest_path_length(problem);
  }
};

}  // namespace biplan
