#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biplan/domains.hpp"
#include "biplan/json_io.hpp"
#include "biplan/rng.hpp"
#include "biplan/search.hpp"

using namespace biplan;

TEST_CASE("graph generator hits the required path length deterministically") {
  GraphProblemParams params;
  params.n = 10;
  params.rho = 0.2;
  const Problem a = generate_graph_problem(params, 7);
  const Problem b = generate_graph_problem(params, 7);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(shortest_path_length(a) == 4);  // 5 nodes = 4 edges

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Problem p = generate_graph_problem(params, seed);
    CHECK(shortest_path_length(p) == params.required_path_nodes - 1);
    CHECK(std::get<int>(p.initial_state) != *p.goal.at_node);
  }
}

TEST_CASE("graph generator exhausts on infeasible parameters") {
  GraphProblemParams params;
  params.n = 5;
  params.rho = 1e-9;  // effectively no edges
  params.max_rejections = 50;
  CHECK_THROWS_AS(generate_graph_problem(params, 1), GenerationExhausted);
}

TEST_CASE("directed generation can change reachability under reversal") {
  GraphProblemParams params;
  params.n = 12;
  params.rho = 0.2;
  params.directed = true;
  bool saw_difference = false;
  for (std::uint64_t seed = 0; seed < 10 && !saw_difference; ++seed) {
    const Problem p = generate_graph_problem(params, mix_seed(3, seed));
    const SearchCost cost = search_cost(p);
    if (cost.difference != 0) saw_difference = true;
  }
  CHECK(saw_difference);
}

TEST_CASE("render_incident matches the listing conventions") {
  Problem p;
  p.domain_kind = DomainKind::graph;
  p.initial_state = 0;
  p.goal.at_node = 1;
  p.action_space = make_graph(3, false, {{0, 1}, {0, 2}});
  CHECK(render_incident(p) ==
        "Node 0 is connected to nodes 1, 2\n"
        "Node 1 is connected to nodes 0\n"
        "Node 2 is connected to nodes 0");

  Problem d;
  d.domain_kind = DomainKind::graph;
  d.initial_state = 0;
  d.goal.at_node = 1;
  d.action_space = make_graph(3, true, {{0, 1}, {2, 0}});
  // Nodes without out-edges still emit a line with the trailing space.
  CHECK(render_incident(d) ==
        "Node 0 points to nodes 1\n"
        "Node 1 points to nodes \n"
        "Node 2 points to nodes 0");

  Problem single;
  single.domain_kind = DomainKind::graph;
  single.initial_state = 0;
  single.goal.at_node = 0;
  single.action_space = make_graph(1, false, {});
  CHECK(render_incident(single) == "Node 0 is connected to nodes ");
}

TEST_CASE("render parses back to the same adjacency") {
  GraphProblemParams params;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Problem p = generate_graph_problem(params, mix_seed(88, seed));
    const std::string text = render_incident(p);
    // Reparse: every "Node u ... nodes a, b" line contributes edges (u, x).
    std::vector<std::pair<int, int>> edges;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
      std::istringstream ls(line);
      std::string word;
      int source = -1;
      ls >> word >> source;
      std::string rest;
      std::getline(ls, rest);
      const auto pos = rest.find("nodes");
      std::istringstream targets(rest.substr(pos + 5));
      std::string token;
      while (std::getline(targets, token, ',')) {
        if (token.find_first_not_of(" \t") == std::string::npos) continue;
        edges.emplace_back(source, std::stoi(token));
      }
    }
    const Graph reparsed = make_graph(p.graph().n, p.graph().directed, edges);
    CHECK(reparsed.edges == p.graph().edges);
  }
}

TEST_CASE("flip reverses directed edges and swaps endpoints") {
  Problem p;
  p.domain_kind = DomainKind::graph;
  p.initial_state = 0;
  p.goal.at_node = 9;
  p.action_space = make_graph(10, true, {{0, 7}, {0, 9}});
  const Problem flipped = flip_problem(p);
  CHECK(flipped.direction_frame == Frame::flipped);
  CHECK(std::get<int>(flipped.initial_state) == 9);
  CHECK(*flipped.goal.at_node == 0);
  CHECK(render_incident(flipped) ==
        "Node 0 points to nodes \n"
        "Node 1 points to nodes \n"
        "Node 2 points to nodes \n"
        "Node 3 points to nodes \n"
        "Node 4 points to nodes \n"
        "Node 5 points to nodes \n"
        "Node 6 points to nodes \n"
        "Node 7 points to nodes 0\n"
        "Node 8 points to nodes \n"
        "Node 9 points to nodes 0");

  // Edge (u,v) in P iff (v,u) in flip(P), exhaustively.
  GraphProblemParams params;
  params.directed = true;
  params.n = 10;
  const Problem random_p = generate_graph_problem(params, 5);
  const Problem random_flip = flip_problem(random_p);
  for (const auto& [u, v] : random_p.graph().edges) {
    CHECK(random_flip.graph().has_edge(v, u));
  }
  CHECK(random_p.graph().edges.size() == random_flip.graph().edges.size());
}

TEST_CASE("flip is an involution up to the frame tag for undirected and array") {
  GraphProblemParams params;
  const Problem g = generate_graph_problem(params, 21);
  const Problem gg = flip_problem(flip_problem(g));
  CHECK(gg.direction_frame == Frame::original);
  CHECK(to_json(gg).dump() == to_json(g).dump());

  ArrayProblemParams array_params;
  array_params.function_set = {ArrayFn::cut, ArrayFn::repeat, ArrayFn::shift_left};
  const Problem a = generate_array_problem(array_params, 3);
  const Problem aa = flip_problem(flip_problem(a));
  CHECK(to_json(aa).dump() == to_json(a).dump());
  const Problem af = flip_problem(a);
  CHECK(std::get<ArrayState>(af.initial_state) == *a.goal.equals);
  CHECK(*af.goal.equals == std::get<ArrayState>(a.initial_state));
}

TEST_CASE("array generator postconditions") {
  ArrayProblemParams params;
  params.function_set = {ArrayFn::shift_left, ArrayFn::shift_right, ArrayFn::reverse,
                         ArrayFn::swap};
  const ArrayInstance inst = generate_array_instance(params, 1);
  CHECK(std::get<ArrayState>(inst.problem.initial_state).size() == 4);
  CHECK(inst.problem.goal.equals->size() == 4);  // size-preserving set

  ArrayProblemParams with_repeat;
  with_repeat.function_set = {ArrayFn::shift_left, ArrayFn::shift_right, ArrayFn::repeat,
                              ArrayFn::cut};
  bool saw_repeat = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ArrayInstance r = generate_array_instance(with_repeat, mix_seed(2, seed));
    const int repeats =
        static_cast<int>(std::count(r.hidden_plan.begin(), r.hidden_plan.end(), ArrayFn::repeat));
    const int cuts =
        static_cast<int>(std::count(r.hidden_plan.begin(), r.hidden_plan.end(), ArrayFn::cut));
    CHECK(repeats <= 1);
    if (repeats == 1 && cuts == 0) {
      CHECK(r.problem.goal.equals->size() == 8);
      saw_repeat = true;
    }
    // Replaying the hidden plan always reaches the goal with legal steps.
    State state = r.problem.initial_state;
    for (ArrayFn f : r.hidden_plan) state = apply_action(r.problem, state, f);
    CHECK(std::get<ArrayState>(state) == *r.problem.goal.equals);
    // Determinism.
    const ArrayInstance again = generate_array_instance(with_repeat, mix_seed(2, seed));
    CHECK(to_json(again.problem).dump() == to_json(r.problem).dump());
  }
  CHECK(saw_repeat);
}

TEST_CASE("array generator exhausts when no construction fits") {
  ArrayProblemParams params;
  params.function_set = {ArrayFn::reverse};  // reverse twice is the identity
  params.plan_length = 2;
  params.max_rejections = 30;
  CHECK_THROWS_AS(generate_array_problem(params, 1), GenerationExhausted);

  // A cut-only set is constructible through the inverted-reversed recipe.
  ArrayProblemParams cut_only;
  cut_only.function_set = {ArrayFn::cut};
  const ArrayInstance inst = generate_array_instance(cut_only, 1);
  CHECK(std::get<ArrayState>(inst.problem.initial_state).size() == 32);
  CHECK(inst.problem.goal.equals->size() == 4);
}

TEST_CASE("import_planbench parses the appendix statement") {
  const Problem p = import_planbench(
      "As initial conditions you have that, the red block is clear, the yellow block is clear, "
      "the hand is empty, the red block is on top of the blue block, the yellow block is on top "
      "of the orange block, the blue block is on the table and the orange block is on the "
      "table.\nYour goal is to have that the orange block is on top of the red block.");
  const auto& state = std::get<BlocksState>(p.initial_state);
  CHECK(render_blocks_compact(state) == "red on blue; yellow on orange");
  REQUIRE(p.goal.clauses.size() == 1);
  CHECK(p.goal.clauses[0].block == Block::orange);
  CHECK(p.goal.clauses[0].support == Block::red);
  CHECK(p.t_max == 20);

  // "I have that" first-person variant parses the same way.
  const Problem q = import_planbench(
      "As initial conditions I have that, the red block is clear, the blue block is clear, the "
      "yellow block is clear, the hand is empty, the blue block is on top of the orange block, "
      "the red block is on the table, the orange block is on the table and the yellow block is "
      "on the table.\nMy goal is to have that the orange block is on top of the blue block.");
  CHECK(std::get<BlocksState>(q.initial_state).below(Block::blue) == Block::orange);
}

TEST_CASE("import_planbench rejects impossible statements") {
  CHECK_THROWS_AS(
      import_planbench("As initial conditions you have that, the red block is on top of the red "
                       "block and the hand is empty.\nYour goal is to have that the red block is "
                       "on top of the blue block."),
      InconsistentState);
  CHECK_THROWS_AS(
      import_planbench("As initial conditions you have that, the hand is empty, the red block is "
                       "on top of the blue block, the blue block is on top of the red block.\n"
                       "Your goal is to have that the red block is on the table."),
      InconsistentState);
  CHECK_THROWS_AS(import_planbench("gibberish"), ParseError);
  CHECK_THROWS_AS(
      import_planbench("As initial conditions you have that, the red block is floating.\nYour "
                       "goal is to have that the red block is on the table."),
      ParseError);
}

TEST_CASE("statement rendering parses back to the same problem") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Problem p = generate_blocks_problem(seed);
    const Problem q = import_planbench(p.statement_text);
    CHECK(states_equal(p.initial_state, q.initial_state));
    CHECK(p.goal.clauses.size() == q.goal.clauses.size());
    CHECK_FALSE(goal_satisfied(p, p.initial_state));
    // Determinism.
    const Problem again = generate_blocks_problem(seed);
    CHECK(again.statement_text == p.statement_text);
  }
}

TEST_CASE("blocks flip completes the goal and swaps roles") {
  const Problem p = import_planbench(
      "As initial conditions you have that, the blue block is clear, the yellow block is clear, "
      "the hand is empty, the blue block is on the table, the orange block is on the table, the "
      "red block is on the table and the yellow block is on the table.\nYour goal is to have "
      "that the orange block is on top of the red block.");
  const Problem flipped = flip_problem(p);
  const auto& init = std::get<BlocksState>(flipped.initial_state);
  // orange on red kept; blue and yellow placed on the table; hand empty.
  CHECK(init.below(Block::orange) == Block::red);
  CHECK(init.on_table(Block::blue));
  CHECK(init.on_table(Block::yellow));
  CHECK_FALSE(init.holding.has_value());
  // The flipped goal is the full original initial state (4 clauses).
  CHECK(flipped.goal.clauses.size() == 4);
  CHECK(goal_satisfied(flipped, p.initial_state));
}
