#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biplan/core.hpp"
#include "biplan/domains.hpp"
#include "biplan/rng.hpp"

using namespace biplan;

namespace {

Problem tiny_graph(bool directed, std::vector<std::pair<int, int>> edges, int n, int s0, int g) {
  Problem p;
  p.domain_kind = DomainKind::graph;
  p.t_max = n;
  p.initial_state = s0;
  p.goal.at_node = g;
  p.action_space = make_graph(n, directed, std::move(edges));
  return p;
}

Problem array_problem(ArrayState initial, ArrayState goal, std::vector<ArrayFn> fns) {
  Problem p;
  p.domain_kind = DomainKind::array;
  p.t_max = 8;
  p.initial_state = std::move(initial);
  p.goal.equals = std::move(goal);
  p.action_space = ArraySpace{std::move(fns)};
  return p;
}

// Test-only oracle: exhaustive simple-path enumeration, independent of BFS.
void enumerate_paths(const Graph& g, int at, int goal, std::vector<bool>& used, int depth,
                     int& best) {
  if (at == goal) {
    best = best < 0 ? depth : std::min(best, depth);
    return;
  }
  for (int v : g.out_neighbors(at)) {
    if (used[v]) continue;
    used[v] = true;
    enumerate_paths(g, v, goal, used, depth + 1, best);
    used[v] = false;
  }
}

class EnumerationOracle : public OptimalityOracle {
 public:
  std::optional<int> shortest_path_length(const Problem& problem) const override {
    const Graph& g = problem.graph();
    std::vector<bool> used(g.n, false);
    const int s0 = std::get<int>(problem.initial_state);
    used[s0] = true;
    int best = -1;
    enumerate_paths(g, s0, *problem.goal.at_node, used, 0, best);
    if (best < 0) return std::nullopt;
    return best;
  }
};

const EnumerationOracle kOracle;

}  // namespace

TEST_CASE("graph apply_action follows edges and rejects missing ones") {
  // The paper's walkthrough: shortest path from node 1 to 3 is (1, 5, 2, 3).
  const Problem p = tiny_graph(false, {{1, 5}, {5, 2}, {2, 3}}, 6, 1, 3);
  State s = p.initial_state;
  s = apply_action(p, s, GraphMove{1, 5});
  CHECK(std::get<int>(s) == 5);
  s = apply_action(p, s, GraphMove{5, 2});
  s = apply_action(p, s, GraphMove{2, 3});
  CHECK(std::get<int>(s) == 3);

  CHECK_THROWS_AS(apply_action(p, State{1}, Action{GraphMove{1, 3}}), IllegalAction);
  CHECK_THROWS_AS(apply_action(p, State{1}, Action{GraphMove{5, 2}}), IllegalAction);
}

TEST_CASE("array functions match their definitions") {
  const Problem p = array_problem({0, 1, 3}, {1, 3, 0},
                                  {ArrayFn::cut, ArrayFn::repeat, ArrayFn::reverse,
                                   ArrayFn::shift_left, ArrayFn::shift_right, ArrayFn::swap});
  CHECK(std::get<ArrayState>(apply_action(p, ArrayState{0, 1, 3}, ArrayFn::shift_left)) ==
        ArrayState{1, 3, 0});
  CHECK(std::get<ArrayState>(apply_action(p, ArrayState{0, 1, 3}, ArrayFn::shift_right)) ==
        ArrayState{3, 0, 1});
  CHECK(std::get<ArrayState>(apply_action(p, ArrayState{0, 1, 3}, ArrayFn::reverse)) ==
        ArrayState{3, 1, 0});
  CHECK(std::get<ArrayState>(apply_action(p, ArrayState{0, 1, 3}, ArrayFn::swap)) ==
        ArrayState{3, 1, 0});
  CHECK(std::get<ArrayState>(apply_action(p, ArrayState{0, 1}, ArrayFn::repeat)) ==
        ArrayState{0, 1, 0, 1});
  CHECK(std::get<ArrayState>(apply_action(p, ArrayState{0, 1, 0, 1}, ArrayFn::cut)) ==
        ArrayState{0, 1});
  // cut requires equal halves: [1,2] != [1,3].
  CHECK_THROWS_AS(apply_action(p, ArrayState{1, 2, 1, 3}, Action{ArrayFn::cut}), IllegalAction);
  // odd length can never cut.
  CHECK_THROWS_AS(apply_action(p, ArrayState{1, 1, 1}, Action{ArrayFn::cut}), IllegalAction);
}

TEST_CASE("blocks moves enforce the listing rules") {
  // hand empty, blue clear on orange: unstack blue from orange is legal.
  BlocksState s;
  s.stacks = {{Block::orange, Block::blue}, {Block::red}, {Block::yellow}};
  CHECK(blocks_step_legal(s, BlocksMove{BlocksMoveKind::unstack, Block::blue, Block::orange}));
  // put down without holding is not.
  CHECK_FALSE(blocks_step_legal(s, BlocksMove{BlocksMoveKind::put_down, Block::red, std::nullopt}));
  // picking up a covered block is not.
  CHECK_FALSE(blocks_step_legal(s, BlocksMove{BlocksMoveKind::pick_up, Block::orange, std::nullopt}));
  // stacking onto a covered target is not.
  BlocksState holding = s;
  holding.holding = Block::yellow;
  holding.stacks = {{Block::orange, Block::blue}, {Block::red}};
  CHECK_FALSE(
      blocks_step_legal(holding, BlocksMove{BlocksMoveKind::stack, Block::yellow, Block::orange}));
  CHECK(blocks_step_legal(holding, BlocksMove{BlocksMoveKind::stack, Block::yellow, Block::red}));
  // unstack with a held block is not.
  CHECK_FALSE(
      blocks_step_legal(holding, BlocksMove{BlocksMoveKind::unstack, Block::blue, Block::orange}));
}

TEST_CASE("invert_action gives the definitional inverses") {
  CHECK(std::get<ArrayFn>(invert_action(DomainKind::array, ArrayFn::repeat)) == ArrayFn::cut);
  CHECK(std::get<ArrayFn>(invert_action(DomainKind::array, ArrayFn::cut)) == ArrayFn::repeat);
  CHECK(std::get<ArrayFn>(invert_action(DomainKind::array, ArrayFn::reverse)) == ArrayFn::reverse);
  CHECK(std::get<ArrayFn>(invert_action(DomainKind::array, ArrayFn::swap)) == ArrayFn::swap);
  CHECK(std::get<ArrayFn>(invert_action(DomainKind::array, ArrayFn::shift_left)) ==
        ArrayFn::shift_right);

  const auto move = std::get<GraphMove>(invert_action(DomainKind::graph, GraphMove{2, 7}));
  CHECK(move.from == 7);
  CHECK(move.to == 2);

  // "put yellow on red" inverts to "unstack yellow from red".
  const auto stack = BlocksMove{BlocksMoveKind::stack, Block::yellow, Block::red};
  const auto unstack = std::get<BlocksMove>(invert_action(DomainKind::blocks, stack));
  CHECK(unstack.kind == BlocksMoveKind::unstack);
  CHECK(unstack.block == Block::yellow);
  CHECK(unstack.target == Block::red);
  const auto pick = std::get<BlocksMove>(
      invert_action(DomainKind::blocks, BlocksMove{BlocksMoveKind::put_down, Block::red, {}}));
  CHECK(pick.kind == BlocksMoveKind::pick_up);
}

TEST_CASE("apply-invert round trip on enumerated small instances") {
  // Undirected graph: every legal move round-trips in place.
  const Problem graph = tiny_graph(false, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}}, 4, 0, 2);
  for (int node = 0; node < 4; ++node) {
    for (const Action& a : legal_actions(graph, node)) {
      const State mid = apply_action(graph, node, a);
      const State back = apply_action(graph, mid, invert_action(DomainKind::graph, a));
      CHECK(states_equal(back, node));
    }
  }

  // Directed graph: the inverse lives in the flipped problem's action space.
  const Problem directed = tiny_graph(true, {{0, 1}, {1, 2}, {2, 0}, {1, 3}}, 4, 0, 3);
  const Problem flipped = flip_problem(directed);
  for (int node = 0; node < 4; ++node) {
    for (const Action& a : legal_actions(directed, node)) {
      const State mid = apply_action(directed, node, a);
      const State back = apply_action(flipped, mid, invert_action(DomainKind::graph, a));
      CHECK(states_equal(back, node));
    }
  }

  // Arrays, breadth-first over a small reachable set.
  const Problem arrays = array_problem({0, 1, 2, 3}, {3, 2, 1, 0},
                                       {ArrayFn::cut, ArrayFn::repeat, ArrayFn::reverse,
                                        ArrayFn::shift_left, ArrayFn::shift_right, ArrayFn::swap});
  std::vector<ArrayState> frontier{{0, 1, 2, 3}};
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<ArrayState> next;
    for (const auto& arr : frontier) {
      for (const Action& a : legal_actions(arrays, arr)) {
        const State mid = apply_action(arrays, arr, a);
        const State back = apply_action(arrays, mid, invert_action(DomainKind::array, a));
        CHECK(states_equal(back, arr));
        next.push_back(std::get<ArrayState>(mid));
      }
    }
    frontier = std::move(next);
  }

  // Blocks, all states reachable within a few moves of a start state.
  Problem blocks;
  blocks.domain_kind = DomainKind::blocks;
  blocks.t_max = 20;
  BlocksState start;
  start.stacks = {{Block::blue, Block::red}, {Block::orange}, {Block::yellow}};
  blocks.initial_state = start;
  blocks.goal.clauses = {BlockClause{Block::orange, Block::red}};
  blocks.action_space = BlocksSpace{{Block::blue, Block::orange, Block::red, Block::yellow}};
  std::vector<BlocksState> frontier_b{start};
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<BlocksState> next;
    for (const auto& state : frontier_b) {
      for (const Action& a : legal_actions(blocks, state)) {
        const State mid = apply_action(blocks, state, a);
        const State back = apply_action(blocks, mid, invert_action(DomainKind::blocks, a));
        CHECK(states_equal(back, state));
        next.push_back(std::get<BlocksState>(mid));
      }
    }
    frontier_b = std::move(next);
  }
}

TEST_CASE("validate_plan walks the plan and grades optimality for graphs") {
  const Problem p =
      tiny_graph(false, {{1, 5}, {5, 2}, {2, 3}, {1, 0}, {0, 4}, {4, 3}}, 6, 1, 3);

  Plan plan;
  plan.actions = {Action{GraphMove{1, 5}}, Action{GraphMove{5, 2}}, Action{GraphMove{2, 3}}};
  const PlanVerdict verdict = validate_plan(p, plan, kOracle);
  CHECK(verdict.valid);
  CHECK(verdict.optimal == true);
  CHECK_FALSE(verdict.failure_step.has_value());

  Plan longer;
  longer.actions = {Action{GraphMove{1, 0}}, Action{GraphMove{0, 4}}, Action{GraphMove{4, 3}}};
  // Same length here, so still optimal.
  CHECK(validate_plan(p, longer, kOracle).optimal == true);

  Plan broken;
  broken.actions = {Action{GraphMove{1, 5}}, Action{GraphMove{5, 3}}};
  const PlanVerdict bad = validate_plan(p, broken, kOracle);
  CHECK_FALSE(bad.valid);
  CHECK(bad.failure_step == 1);

  // An empty plan never satisfies the goal: s0 != g by construction.
  const PlanVerdict empty = validate_plan(p, Plan{}, kOracle);
  CHECK_FALSE(empty.valid);
  CHECK(empty.failure_step == 0);
}

TEST_CASE("validate_plan accepts the appendix array instance") {
  const Problem p = array_problem({4, 0, 0, 5}, {0, 5, 4, 0, 0, 5, 4, 0},
                                  {ArrayFn::cut, ArrayFn::repeat, ArrayFn::shift_left,
                                   ArrayFn::shift_right});
  Plan plan;
  plan.actions = {Action{ArrayFn::shift_left}, Action{ArrayFn::repeat},
                  Action{ArrayFn::shift_left}};
  const PlanVerdict verdict = validate_plan(p, plan, kOracle);
  CHECK(verdict.valid);
  CHECK_FALSE(verdict.optimal.has_value());  // validity suffices for arrays
}

TEST_CASE("validate_plan solves the intro array instance by hand application") {
  // [0,1,3] -> [1,0,3,1,0,3] via shift_right, swap, repeat.
  Problem p = array_problem({0, 1, 3}, {1, 0, 3, 1, 0, 3},
                            {ArrayFn::repeat, ArrayFn::shift_right, ArrayFn::swap});
  Plan plan;
  plan.actions = {Action{ArrayFn::shift_right}, Action{ArrayFn::swap}, Action{ArrayFn::repeat}};
  CHECK(validate_plan(p, plan, kOracle).valid);
}

TEST_CASE("validate_plan rejects plans beyond t_max - 1 actions") {
  Problem p = array_problem({0, 1}, {1, 0}, {ArrayFn::shift_left});
  p.t_max = 3;
  Plan plan;
  plan.actions = {Action{ArrayFn::shift_left}, Action{ArrayFn::shift_left},
                  Action{ArrayFn::shift_left}};
  const PlanVerdict verdict = validate_plan(p, plan, kOracle);
  CHECK_FALSE(verdict.valid);
  CHECK(verdict.failure_step == 2);
}

TEST_CASE("validate_plan enforces frame and direction preconditions") {
  const Problem p = tiny_graph(false, {{0, 1}}, 2, 0, 1);
  Plan backward;
  backward.direction = Direction::backward;
  CHECK_THROWS_AS(validate_plan(p, backward, kOracle), Error);
  Plan flipped;
  flipped.frame = Frame::flipped;
  CHECK_THROWS_AS(validate_plan(p, flipped, kOracle), Error);
}

TEST_CASE("validate_plan is pure") {
  const Problem p = tiny_graph(false, {{0, 1}, {1, 2}}, 3, 0, 2);
  Plan plan;
  plan.actions = {Action{GraphMove{0, 1}}, Action{GraphMove{1, 2}}};
  const PlanVerdict a = validate_plan(p, plan, kOracle);
  const PlanVerdict b = validate_plan(p, plan, kOracle);
  CHECK(a.valid == b.valid);
  CHECK(a.optimal == b.optimal);
  CHECK(a.reason == b.reason);
}

TEST_CASE("goal satisfaction uses subset semantics for blocks") {
  Problem p;
  p.domain_kind = DomainKind::blocks;
  p.action_space = BlocksSpace{{Block::blue, Block::orange, Block::red, Block::yellow}};
  p.goal.clauses = {BlockClause{Block::orange, Block::red}};  // partial
  BlocksState s;
  s.stacks = {{Block::red, Block::orange}, {Block::blue, Block::yellow}};
  CHECK(goal_satisfied(p, s));
  BlocksState other;
  other.stacks = {{Block::red}, {Block::orange}, {Block::blue}, {Block::yellow}};
  CHECK_FALSE(goal_satisfied(p, other));
  // A held block satisfies nothing.
  BlocksState held;
  held.stacks = {{Block::red}, {Block::blue, Block::yellow}};
  held.holding = Block::orange;
  CHECK_FALSE(goal_satisfied(p, held));
}

TEST_CASE("blocks compact rendering matches the worked example") {
  BlocksState s;
  s.stacks = {{Block::blue, Block::red, Block::orange}, {Block::yellow}};
  CHECK(render_blocks_compact(s) == "orange on red on blue; yellow");

  BlocksState held;
  held.stacks = {{Block::blue, Block::red}, {Block::yellow}};
  held.holding = Block::orange;
  CHECK(render_blocks_compact(held) == "orange on hand; red on blue; yellow");

  const auto parsed = parse_blocks_compact("orange on hand; red on blue; yellow");
  REQUIRE(parsed.has_value());
  CHECK(*parsed == held);

  // Goal chains merge: on(yellow,red) + on(red,blue) -> "yellow on red on blue".
  const std::vector<BlockClause> clauses{BlockClause{Block::yellow, Block::red},
                                         BlockClause{Block::red, Block::blue}};
  CHECK(render_goal_compact(clauses) == "yellow on red on blue");
  const auto goal = parse_goal_compact("yellow on red on blue");
  REQUIRE(goal.has_value());
  CHECK(goal->size() == 2);
}

TEST_CASE("blocks state equality ignores stack presentation order") {
  BlocksState a;
  a.stacks = {{Block::blue, Block::red}, {Block::yellow}};
  BlocksState b;
  b.stacks = {{Block::yellow}, {Block::blue, Block::red}};
  CHECK(a == b);
  CHECK(state_key(a) == state_key(b));
  BlocksState c;
  c.stacks = {{Block::red, Block::blue}, {Block::yellow}};
  CHECK_FALSE(a == c);
}

TEST_CASE("blocks move text round-trips") {
  for (const auto& move :
       {BlocksMove{BlocksMoveKind::pick_up, Block::orange, std::nullopt},
        BlocksMove{BlocksMoveKind::put_down, Block::blue, std::nullopt},
        BlocksMove{BlocksMoveKind::stack, Block::yellow, Block::red},
        BlocksMove{BlocksMoveKind::unstack, Block::blue, Block::orange}}) {
    const auto parsed = parse_blocks_move(render_blocks_move(move));
    REQUIRE(parsed.has_value());
    CHECK(parsed->kind == move.kind);
    CHECK(parsed->block == move.block);
    CHECK(parsed->target == move.target);
  }
  CHECK_FALSE(parse_blocks_move("juggle the red block").has_value());
}

TEST_CASE("backward_start_state completes partial blocks goals on the table") {
  Problem p;
  p.domain_kind = DomainKind::blocks;
  p.action_space = BlocksSpace{{Block::blue, Block::orange, Block::red, Block::yellow}};
  p.goal.clauses = {BlockClause{Block::orange, Block::red}};
  const auto state = std::get<BlocksState>(backward_start_state(p));
  CHECK(state.below(Block::orange) == Block::red);
  CHECK(state.on_table(Block::red));
  CHECK(state.on_table(Block::blue));
  CHECK(state.on_table(Block::yellow));
  CHECK_FALSE(state.holding.has_value());
}

TEST_CASE("rng streams are stable across calls") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
}
