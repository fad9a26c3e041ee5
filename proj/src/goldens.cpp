#include "biplan/goldens.hpp"

#include "biplan/domains.hpp"
#include "biplan/prompting.hpp"

namespace biplan {

namespace {

constexpr std::uint64_t kGoldenSeed = 20240;

}  // namespace

Problem golden_undirected_graph() {
  Problem p;
  p.domain_kind = DomainKind::graph;
  p.t_max = 12;
  p.initial_state = 6;
  p.goal.at_node = 4;
  p.action_space = make_graph(12, false,
                              {{0, 5},
                               {1, 2},
                               {1, 4},
                               {1, 9},
                               {2, 5},
                               {2, 7},
                               {3, 6},
                               {3, 7},
                               {5, 6},
                               {5, 11},
                               {7, 10},
                               {8, 9}});
  p.gen_params = GraphProblemParams{12, 0.2, false, 5, 20000};
  return p;
}

Problem golden_directed_graph() {
  Problem p;
  p.domain_kind = DomainKind::graph;
  p.t_max = 12;
  p.initial_state = 3;
  p.goal.at_node = 1;
  p.action_space = make_graph(
      12, true,
      {{0, 2},  {0, 3},  {0, 4}, {0, 8}, {0, 10}, {1, 2},  {1, 6},  {1, 7},  {2, 4},  {2, 5},
       {3, 2},  {4, 2},  {4, 5}, {4, 6}, {4, 9},  {4, 11}, {6, 2},  {6, 3},  {6, 4},  {6, 8},
       {7, 9},  {9, 10}, {9, 11}, {10, 0}, {10, 8}, {10, 9}, {11, 1}, {11, 4}, {11, 9}});
  p.gen_params = GraphProblemParams{12, 0.2, true, 5, 20000};
  return p;
}

Problem golden_array_problem() {
  Problem p;
  p.domain_kind = DomainKind::array;
  p.t_max = 8;
  p.initial_state = ArrayState{4, 0, 0, 5};
  p.goal.equals = ArrayState{0, 5, 4, 0, 0, 5, 4, 0};
  ArrayProblemParams params;
  params.function_set = {ArrayFn::cut, ArrayFn::repeat, ArrayFn::shift_left, ArrayFn::shift_right};
  p.action_space = ArraySpace{params.function_set};
  p.gen_params = params;
  return p;
}

Problem golden_array_reason_problem() {
  Problem p;
  p.domain_kind = DomainKind::array;
  p.t_max = 8;
  p.initial_state = ArrayState{6, 4, 0, 4};
  p.goal.equals = ArrayState{0, 4, 4, 6};
  ArrayProblemParams params;
  params.function_set = {ArrayFn::reverse, ArrayFn::shift_left, ArrayFn::shift_right,
                         ArrayFn::swap};
  p.action_space = ArraySpace{params.function_set};
  p.gen_params = params;
  return p;
}

Problem golden_blocks_problem() {
  return import_planbench(
      "As initial conditions you have that, the red block is clear, the yellow block is clear, "
      "the hand is empty, the red block is on top of the blue block, the yellow block is on top "
      "of the orange block, the blue block is on the table and the orange block is on the "
      "table.\n"
      "Your goal is to have that the orange block is on top of the red block.");
}

std::vector<GoldenItem> golden_prompts() {
  std::vector<GoldenItem> items;
  const Problem undirected = golden_undirected_graph();
  const Problem directed = golden_directed_graph();
  const Problem array = golden_array_problem();
  const Problem array_reason = golden_array_reason_problem();
  const Problem blocks = golden_blocks_problem();

  const auto& graph_params = std::get<GraphProblemParams>(undirected.gen_params);
  const auto& directed_params = std::get<GraphProblemParams>(directed.gen_params);
  const auto& array_params = std::get<ArrayProblemParams>(array.gen_params);

  const auto und_exemplars = make_graph_sampling_exemplars(graph_params, kGoldenSeed);
  const auto dir_exemplars = make_graph_sampling_exemplars(directed_params, kGoldenSeed);
  items.push_back({"graph_sampling_forward_undirected",
                   build_graph_sampling_prompt(undirected, Direction::forward, und_exemplars)});
  items.push_back({"graph_sampling_backward_undirected",
                   build_graph_sampling_prompt(undirected, Direction::backward, und_exemplars)});
  items.push_back({"graph_sampling_forward_directed",
                   build_graph_sampling_prompt(directed, Direction::forward, dir_exemplars)});

  items.push_back(
      {"graph_verification_directed",
       build_graph_verification_prompt(directed,
                                       make_graph_verify_exemplars(directed_params, kGoldenSeed),
                                       {{3, 2, 4, 11, 1}})});
  items.push_back(
      {"graph_verification_undirected",
       build_graph_verification_prompt(undirected,
                                       make_graph_verify_exemplars(graph_params, kGoldenSeed),
                                       {{6, 5, 2, 1, 4}, {6, 3, 7, 2, 1, 4}})});

  items.push_back({"graph_reorder", build_reorder_prompt(render_flipped_incident(directed))});
  items.push_back({"graph_reason", build_reason_prompt(undirected)});

  const auto array_exemplars = make_array_sampling_exemplars(array_params, kGoldenSeed);
  items.push_back({"array_sampling_forward",
                   build_array_sampling_prompt(array, Direction::forward, array_exemplars)});
  items.push_back({"array_sampling_backward",
                   build_array_sampling_prompt(array, Direction::backward, array_exemplars)});
  items.push_back(
      {"array_verification",
       build_array_verification_prompt(array, make_array_verify_exemplars(array_params, kGoldenSeed),
                                       {ArrayFn::shift_left, ArrayFn::repeat, ArrayFn::shift_left})});
  items.push_back({"array_reason", build_reason_prompt(array_reason)});

  items.push_back({"blocks_summarize", build_blocks_summarize_prompt(blocks)});
  const std::string init_compact =
      render_blocks_compact(std::get<BlocksState>(blocks.initial_state));
  const std::string goal_compact = render_goal_compact(blocks.goal.clauses);
  items.push_back(
      {"blocks_plan_forward", build_blocks_plan_prompt(init_compact, goal_compact, Direction::forward)});
  items.push_back({"blocks_plan_backward",
                   build_blocks_plan_prompt(init_compact, goal_compact, Direction::backward)});
  const std::vector<BlocksMove> candidate{
      BlocksMove{BlocksMoveKind::unstack, Block::yellow, Block::orange},
      BlocksMove{BlocksMoveKind::put_down, Block::yellow, std::nullopt},
      BlocksMove{BlocksMoveKind::pick_up, Block::orange, std::nullopt},
      BlocksMove{BlocksMoveKind::stack, Block::orange, Block::red}};
  items.push_back({"blocks_verification",
                   build_blocks_verification_prompt(init_compact, goal_compact, candidate)});
  items.push_back({"blocks_reason", build_reason_prompt(blocks)});
  return items;
}

}  // namespace biplan
